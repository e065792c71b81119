//! Provenance files written next to every output.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};
use moloconv_core::SystemParams;
use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Hex SHA-256 of the canonical config text.
    pub config_hash: String,
    pub tool_version: String,
    pub command_line: String,
    /// RFC 3339, UTC.
    pub timestamp: String,
    /// File name of the output this manifest describes.
    pub output: String,
    /// File name of the canonical config written beside it.
    pub config_file: String,
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name: OsString = path.file_name().unwrap_or_default().to_owned();
    name.push(suffix);
    path.with_file_name(name)
}

pub fn manifest_path(output: &Path) -> PathBuf {
    sibling(output, ".manifest.json")
}

pub fn config_path(output: &Path) -> PathBuf {
    sibling(output, ".config.json")
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Writes `<output>.config.json` and `<output>.manifest.json`.
pub fn write_beside(output: &Path, params: &SystemParams) -> Result<RunManifest> {
    let cfg = config_path(output);
    fs::write(&cfg, config::canonical(params)).map_err(|e| CliError::io(&cfg, e))?;
    let manifest = RunManifest {
        config_hash: config::hash(params),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command_line: std::env::args().collect::<Vec<_>>().join(" "),
        timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
        output: file_name(output),
        config_file: file_name(&cfg),
    };
    let path = manifest_path(output);
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    Ok(manifest)
}
