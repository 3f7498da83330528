use thiserror::Error;

/// Errors raised by the construction, certification and search routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of size {p}^{a} exceeds the limit of {limit} elements")]
    FieldTooLarge { p: u64, a: u32, limit: u64 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("internal error: {0}")]
    Internal(String),
    #[error("subgroup order {order} is invalid: {reason}")]
    InvalidSubgroupOrder { order: u64, reason: String },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid construction parameters: {0}")]
    InvalidParameters(String),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("common neighbourhood of a vertex with itself is undefined")]
    SameVertex,
    #[error("character index {index} out of range for a group of order {order}")]
    CharacterIndex { index: usize, order: usize },
    #[error("character group mismatch: {0}")]
    GroupMismatch(String),
    #[error("annihilating polynomial does not vanish on the adjacency matrix")]
    AnnihilatorFailed,
    #[error("moment system is inconsistent: {0}")]
    MomentSystem(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate random recipe: n rounds to {n} for c3 = {c3}")]
    DegenerateRecipe { n: f64, c3: f64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("graph format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
