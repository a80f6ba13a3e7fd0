use thiserror::Error;

/// Errors raised by the algebra routines and the text parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer, got 0")]
    ZeroNotAllowed,
    #[error("Steinitz number is not a natural number")]
    NotNatural,
    #[error("natural number does not fit in 128 bits")]
    Overflow,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("chain is not divisible: {prev} does not divide {next}")]
    ChainNotDivisible { prev: u64, next: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("invalid cyclotomic level {0}")]
    InvalidLevel(u32),
    #[error("truncation of dimension {dim} exceeds the limit {limit}")]
    TruncationTooLarge { dim: usize, limit: usize },
    #[error("generator index {0} has no image in the representation")]
    UnmappedIndex(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
