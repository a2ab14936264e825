use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("stage `{stage}` failed: {message}")]
    Stage { stage: String, message: String },
    #[error("{0}")]
    NotGraphic(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::NotGraphic(_) => 4,
            CliError::Stage { .. } | CliError::Io { .. } | CliError::Parse { .. } => 3,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn parse(path: &Path, line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.to_path_buf(),
            line,
            message: message.into(),
        }
    }

    pub fn stage(stage: &str, err: impl std::fmt::Display) -> Self {
        CliError::Stage {
            stage: stage.to_string(),
            message: err.to_string(),
        }
    }

    /// Attributes a lower-level failure to `stage`, keeping config and
    /// graphicality errors as they are.
    pub fn in_stage(self, stage: &str) -> Self {
        match self {
            CliError::Config(_) | CliError::NotGraphic(_) | CliError::Stage { .. } => self,
            other => CliError::stage(stage, other),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
