use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A t-stability, SOD or filtration failed one of its defining conditions.
    #[error("axiom violated ({axiom}): {detail}")]
    Axiom { axiom: &'static str, detail: String },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("no exceptional object with the required class within |m| <= {bound}; enlarge the window and retry")]
    WindowTooSmall { bound: i64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. } | Error::InvalidInput(_) | Error::Axiom { .. } => 1,
            Error::Capacity(_) | Error::WindowTooSmall { .. } => 2,
            Error::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
