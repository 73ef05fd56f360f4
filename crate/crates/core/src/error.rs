use thiserror::Error;

/// Errors raised by the library. Indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero row at index {0}")]
    ZeroRow(usize),

    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },

    #[error("index {index} out of range for ground set [1..{size}]")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("contract violated: {0}")]
    Contract(String),

    /// A cross-check between two independent computations failed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("budget exceeded: {what} = {size} exceeds cap {cap}")]
    Budget { what: &'static str, size: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
