use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable `{0}` declared twice in one ring context")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent {exp} of `{var}` is not a multiple of 1/{den}")]
    ExponentDenominator { var: String, exp: String, den: u32 },
    #[error("fractional power {base}^({exp}) is not representable")]
    FractionalPower { base: String, exp: String },
    #[error("operands belong to different ring contexts")]
    ContextMismatch,
    #[error("q-combinatorics argument out of range: {0}")]
    QRange(String),
    #[error("substitution has no image for variable `{0}`")]
    UnboundVariable(String),
    #[error("substitution image is not invertible: {0}")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown root datum `{0}`")]
    UnknownDatum(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("straightening rules do not cover generator {0}")]
    RulesetMismatch(String),
    #[error("tensor arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("Serre element needs i != j (got i = j = {0})")]
    SerreDiagonal(usize),
    #[error("modified algebra needs a non-empty weight window")]
    EmptyWindow,
    #[error("invalid Omega matrix: {0}")]
    InvalidOmega(String),
    #[error("invalid specialization: {0}")]
    InvalidSpecialization(String),
    #[error("module check failed: {0}")]
    ModuleCheck(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
