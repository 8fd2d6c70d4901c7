use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid anchor: {0}")]
    InvalidAnchor(String),

    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),

    #[error("parameter is not rational: {0}")]
    NonRationalParameter(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// Two routes that must agree did not.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("unknown name {name:?}; known: {known}")]
    UnknownName { name: String, known: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
