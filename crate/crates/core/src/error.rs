use thiserror::Error;

use crate::metric::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("list size must be at least 2, got {0}")]
    ListSizeTooSmall(usize),

    #[error("list size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("key width must be between 1 and 16 bits, got {0}")]
    InvalidKeyWidth(u32),

    #[error("key {value} does not fit in {bits} bits")]
    KeyOutOfRange { value: u32, bits: u32 },

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("surviving metrics are not sorted: mu[{index}] > mu[{}]", index + 1)]
    UnsortedMetrics { index: usize },

    #[error("value {value} collides with a sentinel key")]
    SentinelCollision { value: u16 },

    #[error("too many values for list size {list_size}: got {got}")]
    TooManyValues { list_size: usize, got: usize },

    #[error("empty value list")]
    EmptyValues,

    #[error("input violates the structured-list contract: {0}")]
    NotStructured(Violation),

    #[error("duplicate payload {0}")]
    DuplicatePayload(u16),

    #[error("wire pair ({0}, {1}) is not ordered")]
    UnorderedPair(usize, usize),

    #[error("indices {0} and {1} are adjacent")]
    AdjacentIndices(usize, usize),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
