use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("order {target} is not a multiple of {source_order}")]
    OrderNotDivisible { source_order: u32, target: u32 },

    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,

    #[error("singular matrix")]
    Singular,

    #[error("guard exceeded: {0}")]
    Guard(String),

    #[error("invalid character data: {0}")]
    InvalidRho(String),

    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),

    #[error("operation needs {0}")]
    Provenance(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
