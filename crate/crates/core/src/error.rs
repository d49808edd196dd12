use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("tuple must contain at least one element")]
    EmptyTuple,

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("index {0} repeated")]
    RepeatedIndex(usize),

    #[error("invalid arity: {0}")]
    Arity(String),

    #[error("work estimate {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("vector is not contained in the lattice")]
    NotInLattice,

    #[error("lattice is not a sublattice of the target")]
    NotSublattice,

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("tuple has rank 0")]
    RankZero,

    #[error("tuple does not contain the zero element")]
    MissingZero,

    #[error("certificate does not match tuple: {0}")]
    CertificateMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("chosen elements are linearly dependent")]
    Dependent,

    #[error("chosen elements do not form an integer basis of the span")]
    NotABasis,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
