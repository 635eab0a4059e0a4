//! Document ingestion and command dispatch for the `hodge` binary.
//!
//! Exit-code contract: 0 success, 2 validation failure, 3 unsupported
//! input, 4 parse error.

pub mod commands;
pub mod schema;

use std::path::Path;

use hodge_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 4,
            CliError::Validation(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::UnsupportedInput(m) => CliError::Unsupported(m),
            CoreError::InvalidInput(m) => CliError::Validation(m),
            CoreError::NoSolution => CliError::Validation("no solution".into()),
            CoreError::Inconsistency(m) => CliError::Validation(format!("inconsistency: {}", m)),
        }
    }
}

/// Read, parse, and validate a document file.
pub fn load(path: &Path) -> Result<schema::Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {}", path.display(), e)))?;
    schema::parse_document(&text)
}

pub use commands::{run, Flags, Report};
