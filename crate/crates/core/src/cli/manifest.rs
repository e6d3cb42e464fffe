use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::flow::{FlowConfig, Termination};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileEntry {
    /// Path relative to the run directory, `/`-separated.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSource {
    pub preset: Option<String>,
    pub input: Option<String>,
    /// Runs are deterministic; kept for schema stability.
    pub seed: Option<u64>,
}

/// Everything needed to reproduce and audit a run. Deterministic unless wall
/// times were requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config: FlowConfig,
    pub source: RunSource,
    pub termination: Termination,
    pub final_time: f64,
    pub steps: u64,
    pub snapshots: usize,
    pub started_unix: Option<f64>,
    pub finished_unix: Option<f64>,
    pub files: Vec<FileEntry>,
}

pub(crate) fn file_entry(dir: &Path, rel: &str) -> Result<FileEntry> {
    let data = fs::read(dir.join(rel))?;
    Ok(FileEntry {
        path: rel.to_string(),
        bytes: data.len() as u64,
        sha256: hex(&Sha256::digest(&data)),
    })
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
