//! Command-line front end: configuration, commands and output formats.

pub mod commands;
pub mod config;
pub mod output;

use std::fmt;

pub use commands::{run_command, Command, Outcome, SweepParam};
pub use config::{load_config, parse_config, RunConfig};

pub const EXIT_OK: u8 = 0;
/// A verification or equivalence check did not pass.
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INADMISSIBLE: u8 = 2;
pub const EXIT_SOLVER: u8 = 3;
pub const EXIT_CONFIG: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}
