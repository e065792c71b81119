//! File formats, presets and subcommands for the `moloconv` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod manifest;
pub mod presets;
pub mod reproduce;
pub mod table;

pub use error::{CliError, Result};

/// Sizes the global thread pool from `MOLOCONV_THREADS` when set.
pub fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var("MOLOCONV_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("MOLOCONV_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}
