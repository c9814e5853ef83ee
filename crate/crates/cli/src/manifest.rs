//! Run manifests and atomic output writes.
//!
//! Every command writes `<command>_manifest.json` next to its tables:
//! resolved config, sha256 of each input file, record counts, diagnostics,
//! and the produced files. Manifests carry no timestamps, so reruns with the
//! same inputs are byte-identical.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    /// Input path -> sha256 of file contents.
    pub inputs: BTreeMap<String, String>,
    pub counts: BTreeMap<String, u64>,
    pub diagnostics: BTreeMap<String, serde_json::Value>,
    /// File names written into the output directory.
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, config: &RunConfig) -> Result<Self, CliError> {
        let mut inputs = BTreeMap::new();
        let mut hash_input = |path: &PathBuf| -> Result<(), CliError> {
            inputs.insert(path.display().to_string(), sha256_file(path)?);
            Ok(())
        };
        hash_input(&config.embeddings)?;
        hash_input(&config.data)?;
        if let Some(path) = &config.lexicon {
            hash_input(path)?;
        }
        if let Some(path) = &config.sentiment_lexicon {
            hash_input(path)?;
        }
        if let Some(path) = &config.mapping {
            hash_input(path)?;
        }
        Ok(RunManifest {
            tool: "moralframe",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config: config.clone(),
            inputs,
            counts: BTreeMap::new(),
            diagnostics: BTreeMap::new(),
            outputs: Vec::new(),
        })
    }

    pub fn count(&mut self, key: &str, value: u64) {
        self.counts.insert(key.to_string(), value);
    }

    pub fn diagnostic(&mut self, key: &str, value: serde_json::Value) {
        self.diagnostics.insert(key.to_string(), value);
    }

    pub fn write(&self, out_dir: &Path) -> Result<(), CliError> {
        let name = format!("{}_manifest.json", self.command);
        let body = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Numeric(format!("manifest serialization failed: {e}")))?;
        write_atomic(out_dir, &name, body.as_bytes())
    }
}

fn sha256_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// Write a file via a temp-then-rename so readers never observe a partial
/// table.
pub fn write_atomic(out_dir: &Path, name: &str, bytes: &[u8]) -> Result<(), CliError> {
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", out_dir.display())))?;
    let tmp = out_dir.join(format!(".{name}.tmp"));
    let target = out_dir.join(name);
    {
        let mut file = fs::File::create(&tmp)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", tmp.display())))?;
        file.write_all(bytes)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", tmp.display())))?;
    }
    fs::rename(&tmp, &target)
        .map_err(|e| CliError::Input(format!("cannot rename to {}: {e}", target.display())))?;
    Ok(())
}
