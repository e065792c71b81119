use std::io;
use std::path::PathBuf;

use crate::config::ConfigError;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PHYSICS: u8 = 3;
    pub const PARTIAL: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Config { path: PathBuf, source: ConfigError },

    #[error(transparent)]
    Model(#[from] moloconv_core::Error),

    #[error("linearized system is unstable (margin {margin} THz)")]
    Unstable { margin: f64 },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("writing {path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        use moloconv_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config { .. } => exit::USAGE,
            CliError::Model(
                E::Validation(_) | E::InvalidAxis(_) | E::WrongDrive(_) | E::PrereqViolation(_),
            ) => exit::USAGE,
            CliError::Model(_) | CliError::Unstable { .. } => exit::PHYSICS,
            CliError::Io { .. } | CliError::Csv { .. } => exit::IO,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
