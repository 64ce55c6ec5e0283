use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WqaError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("empty input: both series need at least one sample")]
    EmptyInput,

    #[error("BandTooNarrow: window radius {radius} is smaller than the length gap {gap}")]
    BandTooNarrow { radius: usize, gap: usize },

    #[error("undefined path: {0}")]
    UndefinedPath(String),

    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("RankDeficient: design matrix is singular (condition {condition:.3e})")]
    RankDeficient { condition: f64 },

    #[error("degenerate channels after detrending: {}", .0.join(", "))]
    DegenerateChannels(Vec<String>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, WqaError>;

impl From<std::io::Error> for WqaError {
    fn from(e: std::io::Error) -> Self {
        WqaError::Io(e.to_string())
    }
}
