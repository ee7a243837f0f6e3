use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid exponent `{0}`: expected a number in [1, inf]")]
    InvalidExponent(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("sequence carries an analytic tail; truncate it first")]
    TailedSequence,

    #[error("operation requires a finite exponent, got p = inf")]
    InfiniteExponent,

    #[error("operation requires Hilbert exponents (2 -> 2), got {domain} -> {codomain}")]
    NotHilbert { domain: String, codomain: String },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("evaluation cap exceeded: {needed} evaluations > cap {cap}")]
    CapExceeded { needed: u64, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
