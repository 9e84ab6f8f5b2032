use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a documented invariant or precondition.
    #[error("invalid {what}: {reason}")]
    Validation { what: String, reason: String },

    /// A computation produced NaN or an infinity.
    #[error("non-finite value {value} at {location}")]
    NonFinite { location: String, value: f64 },

    #[error("config parse error at line {line}, column {column}: {message}")]
    ConfigParse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("config key `{key}`: {message}")]
    ConfigSchema { key: String, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(what: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            what: what.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation { .. } | Error::ConfigParse { .. } | Error::ConfigSchema { .. } => 2,
            Error::NonFinite { .. } => 3,
            Error::Io { .. } => 4,
        }
    }
}

/// Fails with [`Error::Validation`] unless `value > 0` and finite.
pub(crate) fn ensure_positive(what: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(what, format!("must be > 0 (got {value})")))
    }
}

pub(crate) fn ensure_finite(what: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(what, format!("must be finite (got {value})")))
    }
}
