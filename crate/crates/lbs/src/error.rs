use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LbsError {
    #[error(transparent)]
    Core(#[from] lbs_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{}: {source}", path.display())]
    Sequence {
        path: PathBuf,
        #[source]
        source: lbs_core::Error,
    },

    /// Rejected before any work started.
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl LbsError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::Config(message.into())
    }

    pub fn is_usage(&self) -> bool {
        matches!(self, Self::Config(_))
    }
}
