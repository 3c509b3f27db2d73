use thiserror::Error;

/// Errors raised by the algebra and combinatorics routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid face: {0}")]
    InvalidFace(String),
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("n = {n} exceeds the supported maximum of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("negative weight {weight} for composition {composition}")]
    NegativeWeight { composition: String, weight: String },
    #[error("face {face} is not contained in {other}")]
    NotContained { face: String, other: String },
    #[error("permutation {perm} violates the descent condition for {alpha}")]
    DescentCondition { perm: String, alpha: String },
    #[error("element is not in the span: {0}")]
    NotInSpan(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("missing argument: {0}")]
    MissingArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
