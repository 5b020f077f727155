use thiserror::Error;

/// Errors raised by the engine. Reporting operations never use these for
/// failed checks; they return structured reports instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: {0}")]
    Context(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("degree bound exceeded: {0}")]
    Bound(String),
    #[error("slot out of range: {0}")]
    Slot(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("check failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse { line: 0, msg: msg.into() }
    }

    /// Attach a line number to a parse error.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse { msg, .. } => Error::Parse { line, msg },
            other => other,
        }
    }
}
