use thiserror::Error;

/// Errors raised by the series, coefficient, and summation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series is not invertible: constant term is zero")]
    NonInvertibleSeries,

    #[error("divergent tail: {0}")]
    DivergentTail(String),

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("numeric modes mixed within one run (expected {expected}, got {got})")]
    MixedModes { expected: &'static str, got: &'static str },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
