//! File formats, JSON shapes and the command dispatcher behind the `modcard`
//! binary. Exit codes: 0 success, 1 infeasible or negative answer, 2 usage or
//! input error, 3 cap exceeded.

pub mod cli;
pub mod dto;
pub mod io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] modcard_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(modcard_core::Error::CapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}
