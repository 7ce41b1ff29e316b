//! Relation families of the ordinary, twisted and modified algebras.
mod params;
mod path;
mod relations;

pub use params::{pname, var_den, ParameterSet};
pub use path::{divided_power_e, divided_power_f, inv_qfact, path_mul, path_product, PathExpr, PathWord, Step};
pub use relations::{
    c_scalar, divided_power_nc, instance_keys, modified_relation, plain_relation, relations_of, serre_r, serre_r_f,
    weight_power, AlgebraKind, InstanceKey, RelFamily, RelTerm, Relation, RelationSet,
};

#[cfg(test)]
mod tests;
