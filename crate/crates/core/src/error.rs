use thiserror::Error;

/// Errors raised by the solvers and the data model.
///
/// Every variant names the offending field so callers (the CLI in
/// particular) can report it verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input does not satisfy a structural or range requirement.
    #[error("invalid `{field}`: {reason}")]
    Schema { field: &'static str, reason: String },

    /// A numerical guard was hit: overflow, radius outside the open
    /// annulus, or an insufficient integration cutoff.
    #[error("guard violation on `{field}`: {reason}")]
    Guard { field: &'static str, reason: String },

    #[error("i/o error on `{path}`: {reason}")]
    Io { path: String, reason: String },
}

impl Error {
    pub(crate) fn schema(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Schema { field, reason: reason.into() }
    }

    pub(crate) fn guard(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Guard { field, reason: reason.into() }
    }

    pub(crate) fn io(path: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Error::Io { path: path.into(), reason: err.to_string() }
    }

    /// The offending field name.
    pub fn field(&self) -> &str {
        match self {
            Error::Schema { field, .. } | Error::Guard { field, .. } => field,
            Error::Io { path, .. } => path,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
