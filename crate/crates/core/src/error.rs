use thiserror::Error;

/// Errors raised by the kernel and the document layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mis-shaped input.
    #[error("input error: {0}")]
    Input(String),
    /// A model violates a coherence requirement.
    #[error("model error: {0}")]
    Model(String),
    /// A configured size bound was exceeded.
    #[error("resource error: {0}")]
    Resource(String),
    /// A state the algorithms should never reach.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn model(msg: impl Into<String>) -> Self {
        Error::Model(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn dimension(expected: usize, found: usize) -> Self {
        Error::Input(format!(
            "dimension mismatch: expected {expected}, found {found}"
        ))
    }

    pub fn shape(expected: (usize, usize), found: (usize, usize)) -> Self {
        Error::Input(format!(
            "shape mismatch: expected {}x{}, found {}x{}",
            expected.0, expected.1, found.0, found.1
        ))
    }

    /// Prefixes the message with a source position, keeping the kind.
    pub fn at(self, line: usize, column: usize) -> Self {
        let wrap = |m: String| format!("line {line}, column {column}: {m}");
        match self {
            Error::Input(m) => Error::Input(wrap(m)),
            Error::Model(m) => Error::Model(wrap(m)),
            Error::Resource(m) => Error::Resource(wrap(m)),
            Error::Internal(m) => Error::Internal(wrap(m)),
        }
    }

    /// Process exit code: 1 for model violations, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Model(_) | Error::Internal(_) => 1,
            Error::Input(_) | Error::Resource(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
