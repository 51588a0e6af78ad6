//! Artifact output: CSV with a fixed float format, JSON reports, and
//! the run manifest with content digests.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::CliError;

/// 17 significant digits: enough to round-trip any f64, and fixed so
/// CSV data sections are byte-stable across runs and thread counts.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A CSV artifact: header row plus data rows, LF line endings.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &str) -> Self {
        let mut buf = String::new();
        buf.push_str(header);
        buf.push('\n');
        Csv { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf.into_bytes()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputFile {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub version: String,
    pub subcommand: String,
    pub config: BTreeMap<String, String>,
    pub duration_seconds: f64,
    pub outputs: Vec<OutputFile>,
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Writes one artifact under `dir` and returns its manifest entry.
pub fn write_artifact(dir: &Path, name: &str, bytes: &[u8]) -> Result<OutputFile, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, bytes)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
    Ok(OutputFile {
        path: path.display().to_string(),
        sha256: hex_digest(bytes),
    })
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<OutputFile, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| CliError::Runtime(format!("cannot serialize {name}: {e}")))?;
    bytes.push(b'\n');
    write_artifact(dir, name, &bytes)
}

pub fn write_manifest(dir: &Path, manifest: &RunManifest) -> Result<PathBuf, CliError> {
    let out = write_json(dir, "manifest.json", manifest)?;
    Ok(PathBuf::from(out.path))
}
