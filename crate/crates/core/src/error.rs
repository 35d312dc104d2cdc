use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    /// A named input check failed (e.g. outer tableau not Littlewood-Richardson).
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An algorithm reached a state its proof says is impossible.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn inv(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
