use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

/// One schema violation, located by a JSON pointer into the document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = if self.path.is_empty() { "/" } else { &self.path };
        write!(f, "{path}: {}", self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("scenario is invalid ({} error(s))", .0.len())]
    Validation(Vec<SchemaError>),
    #[error("{context}: {source}")]
    Engine {
        context: String,
        #[source]
        source: tlam_core::Error,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("grids differ: {0}")]
    GridMismatch(String),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn engine(context: impl Into<String>, source: tlam_core::Error) -> Self {
        CliError::Engine {
            context: context.into(),
            source,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for bad input, 3 for engine failures, 4 for file-system trouble.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Input(_) | CliError::GridMismatch(_) => 2,
            CliError::Engine { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
