use thiserror::Error;

/// Errors produced by code, factor-set, loop and identity operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad character {found:?} at position {position}")]
    BadCharacter { position: usize, found: char },

    #[error("word of {0} coordinates exceeds the 64-coordinate limit")]
    TooLong(usize),

    #[error("empty word")]
    EmptyWord,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("no generator rows given")]
    NoRows,

    #[error("dimension {dimension} exceeds the limit of {limit}")]
    DimensionTooLarge { dimension: usize, limit: usize },

    #[error("codeword index {index} out of range for {count} codewords")]
    IndexOutOfRange { index: usize, count: usize },

    #[error(
        "could not generate a doubly even [{length},{dimension}] code within the retry budget"
    )]
    GenerationFailed { length: usize, dimension: usize },

    #[error("invalid generation parameters: {0}")]
    InvalidParameters(String),

    #[error("table shape mismatch: expected {expected}x{expected}, got {rows} rows with widths {detail}")]
    ShapeMismatch {
        expected: usize,
        rows: usize,
        detail: String,
    },

    #[error("table is not normalized: entry ({row},{col}) is nonzero")]
    NotNormalized { row: usize, col: usize },

    #[error("code is not doubly even")]
    NotDoublyEven,

    #[error("linear system for the factor set is inconsistent")]
    InconsistentSystem,

    #[error("table is not a factor set")]
    NotAFactorSet,

    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),

    #[error("loop order {order} exceeds the scan limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown name {0:?}")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
