use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("parametric input needs an evaluation point: {what}")]
    Parametric { what: String },

    #[error("metric is not positive definite")]
    NotPositiveDefinite,

    #[error("Hodge star needs a rational volume factor; det(g) = {det} is not a square")]
    IrrationalVolume { det: String },

    #[error("invalid Hermitian structure: {0}")]
    InvalidHermitian(String),

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("metric is not ad-invariant")]
    NotAdInvariant,

    #[error("unrecognized algebra: {0}")]
    Unrecognized(String),

    #[error("ambiguous identification: {0}")]
    Ambiguous(String),

    #[error("cannot print coefficient `{0}` in compact notation")]
    Unprintable(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("unknown name `{0}`")]
    Unknown(String),

    #[error("invalid JSON: {0}")]
    Json(String),
}
