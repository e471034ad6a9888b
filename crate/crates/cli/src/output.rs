use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Everything needed to repeat a run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Full argument vector after the program name.
    pub argv: Vec<String>,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    /// Input name → SHA-256 of its bytes.
    pub input_digests: Vec<(String, String)>,
    pub tool_version: String,
    /// Seconds since the Unix epoch, or `SOURCE_DATE_EPOCH` when set.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: &str, argv: Vec<String>, parameters: serde_json::Value, seed: Option<u64>) -> Self {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.parse().ok()).unwrap_or_else(|| {
            std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
        });
        Self {
            command: command.into(),
            argv,
            parameters,
            seed,
            input_digests: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timestamp,
        }
    }

    pub fn digest(&mut self, name: impl Into<String>, bytes: &[u8]) {
        self.input_digests.push((name.into(), sha256_hex(bytes)));
    }
}

/// Files produced by one command, written only once all are ready.
#[derive(Default)]
pub struct OutputSet {
    files: Vec<(String, Vec<u8>)>,
}

impl OutputSet {
    pub fn add(&mut self, name: &str, contents: impl Into<Vec<u8>>) {
        self.files.push((name.into(), contents.into()));
    }

    /// Writes every file through a temporary sibling and an atomic rename;
    /// on failure the files already renamed are removed again.
    pub fn commit(self, dir: &Path, manifest: &RunManifest) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let mut files = self.files;
        files.push(("manifest.json".into(), serde_json::to_vec_pretty(manifest)?));
        let mut staged = Vec::new();
        for (name, bytes) in &files {
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            staged.push((dir.join(name), tmp));
        }
        let mut written = Vec::new();
        for (path, tmp) in staged {
            if let Err(e) = tmp.persist(&path) {
                for p in &written {
                    let _ = std::fs::remove_file(p);
                }
                return Err(e.error).with_context(|| format!("cannot write {}", path.display()));
            }
            written.push(path);
        }
        Ok(written)
    }
}
