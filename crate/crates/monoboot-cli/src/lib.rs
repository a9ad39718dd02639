//! Command-line front end: CSV ingestion, the Mendota preprocessing
//! transform, and CSV/JSON emission of fits, bands, bandwidth curves and
//! coverage reports. Every output embeds the parameters and seed needed to
//! replay it.

pub mod app;
pub mod io;
pub mod mendota;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("years must be consecutive and ascending (violated after index {index})")]
    NonConsecutiveYears { index: usize },
    #[error("invalid grid step {0}: must divide the unit interval")]
    BadGridStep(f64),
    #[error(transparent)]
    Lib(#[from] monoboot::Error),
}

impl CliError {
    /// Stable tag for machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::NonConsecutiveYears { .. } => "non-consecutive-years",
            CliError::BadGridStep(_) => "bad-grid-step",
            CliError::Lib(_) => "estimation",
        }
    }
}

#[cfg(doctest)]
mod book {
    //! Runs the CLI-facing guide chapter as doc-tests.
    #[doc = include_str!("../../../book/src/mendota.md")]
    pub mod mendota {}
}
