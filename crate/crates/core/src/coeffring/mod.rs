//! Exact coefficient arithmetic: Laurent polynomials with rational exponents
//! and sign variables, their fraction field, and q-combinatorics.

mod context;
mod monomial;
mod poly;
mod qcomb;
mod ratexpr;
mod subst;
mod unit;

pub use context::{ContextBuilder, RingContext, VarId, VarInfo, VarKind};
pub use monomial::Monomial;
pub use poly::{fmt_monomial, rat, LaurentPoly};
pub use qcomb::{gauss_vanish, qbinom, qfact, qint, qint_signed};
pub use ratexpr::RatExpr;
pub use subst::Substitution;
pub use unit::Unit;
