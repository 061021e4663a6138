use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("empty interval [{0}, {1}]")]
    EmptyInterval(usize, usize),
    #[error("resource guard exceeded: {0}")]
    Guard(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("coloring mismatch: {0}")]
    ColoringMismatch(String),
    #[error("truncated: {0}")]
    Truncated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
