use std::path::PathBuf;

use crate::files::FormatError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {error}", path.display())]
    Format { path: PathBuf, error: FormatError },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] kahler_core::Error),
}

impl CliError {
    /// 2 for bad input, 3 for an exhausted budget or cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource_limit() => 3,
            _ => 2,
        }
    }
}
