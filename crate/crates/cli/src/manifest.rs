//! Run manifests: parameters, seed, version and output digests.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub version: String,
    pub seed: u64,
    pub parameters: serde_json::Value,
    /// File name to SHA-256 hex digest.
    pub outputs: BTreeMap<String, String>,
}

/// Collects artifacts under one output directory and records their digests.
pub struct Outputs {
    dir: PathBuf,
    digests: BTreeMap<String, String>,
}

impl Outputs {
    pub fn new(dir: PathBuf) -> Self {
        Self {
            dir,
            digests: BTreeMap::new(),
        }
    }

    pub fn write(&mut self, name: &str, contents: &str) -> std::io::Result<PathBuf> {
        let path = self.dir.join(name);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(&path, contents)?;
        self.digests.insert(name.to_string(), digest(contents.as_bytes()));
        Ok(path)
    }

    pub fn finish(self, subcommand: &str, seed: u64, parameters: serde_json::Value) -> std::io::Result<PathBuf> {
        let manifest = RunManifest {
            subcommand: subcommand.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            parameters,
            outputs: self.digests,
        };
        let path = self.dir.join(format!("{subcommand}.manifest.json"));
        std::fs::create_dir_all(&self.dir)?;
        let mut text = serde_json::to_string_pretty(&manifest).expect("serializable manifest");
        text.push('\n');
        std::fs::write(&path, text)?;
        Ok(path)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
