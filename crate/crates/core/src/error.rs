use std::path::PathBuf;

use thiserror::Error;

/// Problems with a scenario definition.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("`{key}` = {value} is out of range: {reason}")]
    OutOfRange {
        key: &'static str,
        value: String,
        reason: &'static str,
    },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("unknown preset `{0}` (expected `cb` or `rw`)")]
    UnknownPreset(String),
    #[error("invalid scenario file: {0}")]
    Syntax(String),
}

impl ConfigError {
    pub(crate) fn out_of_range(key: &'static str, value: f64, reason: &'static str) -> Self {
        ConfigError::OutOfRange {
            key,
            value: value.to_string(),
            reason,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error("no metrics records to summarize")]
    EmptyRecords,
    #[error("plot rendering failed: {0}")]
    Plot(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-readable category, used for CLI exit reporting.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
            Error::Format { .. } => "format",
            Error::EmptyRecords => "empty",
            Error::Plot(_) => "plot",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
