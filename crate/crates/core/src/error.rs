use std::io;

use thiserror::Error;

/// Errors produced while parsing input, building, querying or (de)serializing an index.
#[derive(Debug, Error)]
pub enum Error {
    /// A raw bit string contained something other than `0` or `1`.
    #[error("invalid character {found:?} at offset {offset}: expected '0' or '1'")]
    InvalidBit { offset: usize, found: char },

    /// A run-length text line could not be parsed.
    #[error("malformed run-length input at token {token}: {reason}")]
    InvalidRunToken { token: usize, reason: String },

    /// A run-length string violates its structural invariants.
    #[error("invalid run-length string: {0}")]
    InvalidRuns(String),

    #[error("index {index} out of bounds (valid range {lo}..={hi})")]
    OutOfBounds { index: usize, lo: usize, hi: usize },

    /// A count table does not step by 0 or 1, so it has no delta encoding.
    #[error("count table is not a unit-step monotone sequence at k = {k}")]
    NotUnitStep { k: usize },

    /// A table value exceeds what any window of that length can hold.
    #[error("value {value} exceeds window length {length}")]
    ValueExceedsLength { length: usize, value: usize },

    #[error("string length {0} exceeds the supported maximum of {max}", max = u32::MAX)]
    TooLong(usize),

    #[error("index was built without witness tables; rebuild with witnessing enabled")]
    WitnessUnavailable,

    #[error("unsupported index format: {0}")]
    Format(String),

    #[error("corrupt index file: {0}")]
    Corrupt(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
