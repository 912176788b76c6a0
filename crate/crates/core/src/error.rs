use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("form is not closed: d of it is {0}")]
    NotClosed(String),
    #[error("transversality fails: {0}")]
    Transversality(String),
    #[error("singular operator: {0}")]
    Singular(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("inconsistent solver state: {0}")]
    Inconsistent(String),
    #[error("degenerate sample point: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("scene error: {0}")]
    Scene(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
