//! Run manifest: what each stage read and wrote, with SHA-256 digests, so
//! a rerun can skip stages whose inputs and settings are unchanged.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    /// Relative to the work directory.
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    Done,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub name: String,
    pub status: StageStatus,
    /// Digest of the stage's settings and seed.
    pub params: String,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub duration_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: serde_json::Value,
    pub stages: Vec<StageRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<String>,
}

pub fn sha256_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(sha256_bytes(&bytes))
}

pub fn digest_files(workdir: &Path, files: &[PathBuf]) -> Result<Vec<FileDigest>> {
    files
        .iter()
        .map(|f| {
            Ok(FileDigest {
                path: f.to_string_lossy().into_owned(),
                sha256: sha256_file(&workdir.join(f))?,
            })
        })
        .collect()
}

impl RunManifest {
    pub fn new(config: serde_json::Value) -> Self {
        RunManifest {
            config,
            stages: Vec::new(),
            failed_stage: None,
        }
    }

    /// The manifest in `workdir`, or a fresh one. An unreadable manifest is
    /// treated as absent.
    pub fn load_or_new(workdir: &Path, config: serde_json::Value) -> Self {
        let path = workdir.join(MANIFEST_FILE);
        let loaded = std::fs::read(&path)
            .ok()
            .and_then(|b| serde_json::from_slice::<RunManifest>(&b).ok());
        match loaded {
            Some(mut m) => {
                m.config = config;
                m
            }
            None => RunManifest::new(config),
        }
    }

    pub fn save(&self, workdir: &Path) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("manifest serializes");
        bytes.push(b'\n');
        crate::formats::write_file(&workdir.join(MANIFEST_FILE), &bytes)
    }

    pub fn stage(&self, name: &str) -> Option<&StageRecord> {
        self.stages.iter().find(|s| s.name == name)
    }

    /// Whether `name` completed with these settings and inputs, and its
    /// outputs are still on disk unchanged.
    pub fn is_fresh(&self, workdir: &Path, name: &str, params: &str, inputs: &[PathBuf]) -> bool {
        let Some(rec) = self.stage(name) else {
            return false;
        };
        if rec.status != StageStatus::Done || rec.params != params {
            return false;
        }
        let same = |recorded: &[FileDigest], files: Option<&[PathBuf]>| -> bool {
            if let Some(files) = files {
                if files.len() != recorded.len() {
                    return false;
                }
            }
            recorded
                .iter()
                .all(|d| sha256_file(&workdir.join(&d.path)).is_ok_and(|h| h == d.sha256))
        };
        let input_paths: Vec<String> = inputs
            .iter()
            .map(|p| p.to_string_lossy().into_owned())
            .collect();
        let recorded: Vec<&str> = rec.inputs.iter().map(|d| d.path.as_str()).collect();
        recorded == input_paths && same(&rec.inputs, Some(inputs)) && same(&rec.outputs, None)
    }

    pub fn record(&mut self, rec: StageRecord) {
        if rec.status == StageStatus::Failed {
            self.failed_stage = Some(rec.name.clone());
        } else if self.failed_stage.as_deref() == Some(rec.name.as_str()) {
            self.failed_stage = None;
        }
        match self.stages.iter_mut().find(|s| s.name == rec.name) {
            Some(slot) => *slot = rec,
            None => self.stages.push(rec),
        }
    }
}
