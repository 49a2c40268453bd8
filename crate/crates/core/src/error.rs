use thiserror::Error;

/// Errors surfaced by the library. Messages carry the offending mathematical
/// condition (e.g. `pole: x = q^3`) so callers can report it verbatim.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Input outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A denominator vanished at the evaluation point.
    #[error("pole: {0}")]
    Pole(String),
    /// A mathematically impossible state; signals a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Pole(_) => "pole",
            Error::Internal(_) => "internal",
            Error::Parse(_) => "parse",
        }
    }
}
