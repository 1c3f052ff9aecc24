//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, AtlasError>;

#[derive(Debug, Error)]
pub enum AtlasError {
    /// Tensor shapes do not line up for the requested operation.
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    Dimension {
        op: &'static str,
        left: String,
        right: String,
    },

    /// The caller violated an API contract (wrong tape, negative horizon, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// A numeric argument fell outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input data; lists every offending record.
    #[error("ingestion error: {0}")]
    Ingestion(String),

    /// Cohort preparation (imputation, windowing, splitting) failed.
    #[error("preparation error: {0}")]
    Preparation(String),

    /// A metric is undefined for the given inputs.
    #[error("metric error: {0}")]
    Metric(String),

    /// Training failed to make progress under the stated contract.
    #[error("training error: {0}")]
    Training(String),

    /// A configuration file is missing a key or holds an unparseable value.
    #[error("config error in {path}: {message}")]
    Config { path: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl AtlasError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        AtlasError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        AtlasError::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}
