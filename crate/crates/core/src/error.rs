use thiserror::Error;

/// Errors raised by the exact-arithmetic and topology routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input is valid but lies outside the regime this crate can decide.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The two objects cannot be compared by the available criterion.
    #[error("not comparable: {0}")]
    NotComparable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
