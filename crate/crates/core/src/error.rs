use thiserror::Error;

/// Errors raised by distribution construction, bound evaluation and parsing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the set where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// The distribution lacks a property the bound assumes.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The bound's validity region does not include the query.
    #[error("not applicable: {0}")]
    Applicability(String),
    /// A declared density shape failed its numerical cross-check.
    #[error("shape check failed: {0}")]
    Shape(String),
    /// Malformed distribution literal or other textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
