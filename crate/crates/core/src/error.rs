use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("bounds too large: {0}")]
    TooLarge(String),
    /// A construction that must succeed did not; this is a bug, not a data condition.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
