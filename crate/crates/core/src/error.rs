use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants map onto the command-line exit codes: validation and unsupported
/// operations are invalid input (2), numerical failures are 3, and failed
/// inequality checks are 1.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("validation failed [{check}]: {detail}")]
    Validation { check: &'static str, detail: String },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("check failed [{check}]: {detail}")]
    CheckFailed { check: &'static str, detail: String },
}

impl Error {
    pub(crate) fn validation(check: &'static str, detail: impl Into<String>) -> Self {
        Error::Validation { check, detail: detail.into() }
    }

    pub(crate) fn check_failed(check: &'static str, detail: impl Into<String>) -> Self {
        Error::CheckFailed { check, detail: detail.into() }
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CheckFailed { .. } => 1,
            Error::Validation { .. } | Error::Unsupported(_) => 2,
            Error::Numerical(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
