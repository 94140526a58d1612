use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, ScanError>;

#[derive(Debug, Error)]
pub enum ScanError {
    /// Malformed or invalid scenario document, or an invalid CLI option.
    #[error("scenario error: {0}")]
    Scenario(String),

    #[error(transparent)]
    Physics(#[from] pdc_core::Error),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ScanError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Scenario(_) => 2,
            Self::Physics(_) => 3,
            Self::Io { .. } => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}
