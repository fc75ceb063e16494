use std::path::PathBuf;

use inducedmap_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ASSERTION_FAILED: i32 = 1;
    pub const CONDITION_FAILS: i32 = 2;
    pub const INDETERMINATE: i32 = 3;
    pub const USAGE: i32 = 64;
    pub const DIMENSION: i32 = 65;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_dimension_error() => exit::DIMENSION,
            CliError::Core(Error::PreconditionTheorem | Error::PreconditionVqd) => exit::CONDITION_FAILS,
            _ => exit::USAGE,
        }
    }
}
