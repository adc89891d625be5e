use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("input error: {0}")]
    Input(String),
    /// Text that does not match the map grammar; `position` is a byte offset.
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    /// Parsed input that fails a structural check (zero resultant, singular matrix).
    #[error("validation error: {0}")]
    Validation(String),
    /// A theorem hypothesis or operation precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A configured cap (degree, enumeration, table size) was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// Elements of Q(sqrt d1) and Q(sqrt d2) with d1 != d2 were combined.
    #[error("mixed radicands: sqrt({0}) and sqrt({1})")]
    MixedRadicand(i64, i64),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
