use std::io;

use thiserror::Error;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("output error: {0}")]
    Format(String),
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Domain(_) | CliError::Io(_) | CliError::Format(_) => EXIT_DOMAIN,
        }
    }
}

impl From<cmc_core::Error> for CliError {
    fn from(e: cmc_core::Error) -> Self {
        use cmc_core::Error as E;
        match e {
            E::InvalidDimension(_) | E::Parameter(_) | E::DimensionMismatch { .. } => CliError::Config(e.to_string()),
            E::OutsideBall { .. } | E::SingularPoint(_) | E::Domain(_) | E::Spacelike { .. } => {
                CliError::Domain(e.to_string())
            }
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Format(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
