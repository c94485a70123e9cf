use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("point {point:?} lies outside the search domain")]
    OutOfDomain { point: Vec<f64> },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("objective `{0}` is noisy and needs a noise source")]
    MissingNoise(String),

    #[error("unknown objective `{0}`")]
    UnknownObjective(String),

    #[error("{0}")]
    Usage(String),

    #[error("grid of {points} points exceeds the limit of {limit}")]
    GridTooLarge { points: f64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
