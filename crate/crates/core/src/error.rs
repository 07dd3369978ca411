use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient overflow")]
    Overflow,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("paths are not comparable")]
    NotComparable,
    #[error("generator index {index} out of range 1..={max}")]
    GeneratorOutOfRange { index: usize, max: usize },
    #[error("({0}, {1}) is not a pairing")]
    NotAPairing(usize, usize),
    #[error("({0}, {1}) is not a reversed pair of the linkage")]
    NotReversed(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("invalid labelling: {0}")]
    InvalidLabelling(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("inconsistent triangular system: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
