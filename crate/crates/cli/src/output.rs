//! Output files and the run manifest written next to them.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Serialize)]
struct FileEntry {
    path: String,
    bytes: u64,
    sha256: String,
}

fn hex_digest(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects outputs in memory and writes them together with a manifest.
/// Refuses to replace existing files unless `force` is set; the check runs
/// in [`Outputs::plan`], before any work is done.
pub struct Outputs {
    force: bool,
    planned: Vec<PathBuf>,
    files: Vec<(PathBuf, Vec<u8>)>,
    inputs: Vec<PathBuf>,
    manifest: Option<PathBuf>,
}

impl Outputs {
    pub fn new(force: bool) -> Self {
        Outputs {
            force,
            planned: Vec::new(),
            files: Vec::new(),
            inputs: Vec::new(),
            manifest: None,
        }
    }

    /// Register the primary output; its manifest is `<stem>.manifest.json`.
    pub fn plan_primary(&mut self, path: &Path) -> Result<(), CliError> {
        let manifest = sibling(path, "manifest.json");
        self.plan(path)?;
        self.plan(&manifest)?;
        self.manifest = Some(manifest);
        Ok(())
    }

    pub fn plan(&mut self, path: &Path) -> Result<(), CliError> {
        if path.exists() && !self.force {
            return Err(CliError::Usage(format!(
                "{} already exists (use --force to overwrite)",
                path.display()
            )));
        }
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            if !dir.is_dir() {
                return Err(CliError::Usage(format!("output directory {} does not exist", dir.display())));
            }
        }
        self.planned.push(path.to_path_buf());
        Ok(())
    }

    /// Record an input file; it must exist.
    pub fn input(&mut self, path: &Path) -> Result<(), CliError> {
        if !path.is_file() {
            return Err(CliError::Usage(format!("input file {} not found", path.display())));
        }
        self.inputs.push(path.to_path_buf());
        Ok(())
    }

    pub fn add(&mut self, path: &Path, data: impl Into<Vec<u8>>) {
        debug_assert!(self.planned.iter().any(|p| p == path), "unplanned output {}", path.display());
        self.files.push((path.to_path_buf(), data.into()));
    }

    pub fn write(self, subcommand: &str, argv: &[String], config: &impl Serialize) -> Result<(), CliError> {
        let mut outputs = Vec::new();
        for (path, data) in &self.files {
            fs::write(path, data).map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display())))?;
            outputs.push(FileEntry {
                path: path.display().to_string(),
                bytes: data.len() as u64,
                sha256: hex_digest(data),
            });
        }
        let Some(manifest_path) = self.manifest else {
            return Ok(());
        };
        let mut inputs = Vec::new();
        for path in &self.inputs {
            let data = fs::read(path).map_err(|e| CliError::Runtime(format!("reading {}: {e}", path.display())))?;
            inputs.push(FileEntry {
                path: path.display().to_string(),
                bytes: data.len() as u64,
                sha256: hex_digest(&data),
            });
        }
        let manifest = serde_json::json!({
            "tool": "econlex",
            "version": env!("CARGO_PKG_VERSION"),
            "subcommand": subcommand,
            "argv": argv,
            "config": config,
            "inputs": inputs,
            "outputs": outputs,
            "created_utc": chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        });
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        fs::write(&manifest_path, text)
            .map_err(|e| CliError::Runtime(format!("writing {}: {e}", manifest_path.display())))
    }
}

/// `dir/name.csv` -> `dir/name.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("output");
    path.with_file_name(format!("{stem}.{suffix}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sibling_names() {
        assert_eq!(sibling(Path::new("out/ep.csv"), "meta.json"), PathBuf::from("out/ep.meta.json"));
        assert_eq!(sibling(Path::new("ep"), "manifest.json"), PathBuf::from("ep.manifest.json"));
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(hex_digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn refuses_to_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        fs::write(&p, "old").unwrap();
        assert!(matches!(Outputs::new(false).plan(&p), Err(CliError::Usage(_))));
        assert!(Outputs::new(true).plan(&p).is_ok());
    }
}
