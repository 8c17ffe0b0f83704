use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (unit tags, config files, overrides).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("configuration error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A value outside the domain of a formula (e.g. z outside the crystal).
    #[error("domain error: {0}")]
    Domain(String),

    /// Quadrature did not reach its tolerance before the subdivision cap.
    #[error("numerical error: {message} (partial estimate {partial:e}, error estimate {error:e})")]
    Numerical {
        message: String,
        partial: f64,
        error: f64,
    },

    /// Post-processing of a computed curve failed (e.g. no half-maximum crossing).
    #[error("analysis error: {0}")]
    Analysis(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error on {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors a user fixes by editing inputs, as opposed to numerical failures.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::Parse { .. } | Error::Domain(_) | Error::Io { .. }
        )
    }
}
