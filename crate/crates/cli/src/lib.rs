//! Command-line surface of the inscriber library: file formats, the
//! command implementations and OFF export. `main.rs` only parses arguments
//! and maps outcomes to exit codes.

pub mod args;
pub mod commands;
pub mod export;
pub mod formats;

use thiserror::Error;

/// Failure of a command, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Negative answer backed by evidence (exit 1).
    #[error("{0}")]
    Negative(String),
    /// Unreadable or invalid input (exit 2).
    #[error("input error: {0}")]
    Input(String),
    /// A result failed its own verification (exit 3).
    #[error("internal verification failed: {0}")]
    Internal(String),
    #[error("input error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Negative(_) => 1,
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Exit code of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Affirmative,
    Negative,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Affirmative => 0,
            Status::Negative => 1,
        }
    }
}
