//! Commands behind the `nash` binary, kept in a library so tests can drive them directly.

pub mod cache;
pub mod commands;
pub mod input;
pub mod render;
pub mod verify;

use std::fmt;

/// Failure of a command, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or improper input: exit code 2.
    Input(String),
    /// A node or depth budget ran out: exit code 3.
    Budget(String),
    /// A verification suite reported failures: exit code 4.
    Verify(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Verify(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Budget(m) | CliError::Verify(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<nash_core::Error> for CliError {
    fn from(e: nash_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
