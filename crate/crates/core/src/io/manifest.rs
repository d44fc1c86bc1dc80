use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::RunConfig;
use crate::{Error, Result};

/// One file written by a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputFile {
    /// Path relative to the run directory.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

/// One asserted property and whether it held.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass, detail: detail.into() }
    }
}

/// Record of a finished (or aborted) run, written last.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub mode: String,
    pub config_hash: String,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub crate_version: String,
    /// Library modules the run went through, each at the crate version.
    pub modules: Vec<String>,
    /// The configuration text as given, if the run came from a document.
    pub input_text: Option<String>,
    /// The validated configuration.
    pub input: serde_json::Value,
    pub outputs: Vec<OutputFile>,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Set when the run stopped early; the listed outputs are then incomplete.
    pub partial: bool,
    pub error: Option<String>,
    pub exit_code: i32,
}

impl RunManifest {
    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_slice(&fs::read(path)?)?)
    }
}

/// Hex SHA-256 of the validated task and seed. Output location and worker
/// count do not enter the hash because they do not change any number.
pub fn config_hash(cfg: &RunConfig) -> String {
    let payload = serde_json::to_vec(&(&cfg.task, cfg.seed)).expect("configuration serialises");
    hex::encode(Sha256::digest(payload))
}

pub(crate) fn unix_now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64())
}

/// Writes `bytes` to `path` through a temporary sibling and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Directory of one run. Every file goes through [`RunDir::write`] so the
/// manifest can list it.
#[derive(Debug)]
pub struct RunDir {
    dir: PathBuf,
    outputs: Vec<OutputFile>,
}

impl RunDir {
    pub fn create(dir: PathBuf) -> Result<Self> {
        fs::create_dir_all(&dir)?;
        Ok(Self { dir, outputs: Vec::new() })
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    pub fn outputs(&self) -> &[OutputFile] {
        &self.outputs
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        if name == MANIFEST {
            return Err(Error::Precondition("the manifest name is reserved".into()));
        }
        write_atomic(&self.dir.join(name), bytes)?;
        self.record(name, bytes);
        Ok(())
    }

    /// Lists a file that is already present with the given contents.
    pub fn record(&mut self, name: &str, bytes: &[u8]) {
        self.outputs.retain(|o| o.path != name);
        self.outputs.push(OutputFile {
            path: name.to_string(),
            bytes: bytes.len() as u64,
            sha256: hex::encode(Sha256::digest(bytes)),
        });
    }

    pub fn write_with<F>(&mut self, name: &str, f: F) -> Result<()>
    where
        F: FnOnce(&mut Vec<u8>) -> Result<()>,
    {
        let mut buf = Vec::new();
        f(&mut buf)?;
        self.write(name, &buf)
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut buf = serde_json::to_vec_pretty(value)?;
        buf.push(b'\n');
        self.write(name, &buf)
    }

    pub fn finish(self, manifest: &RunManifest) -> Result<PathBuf> {
        let path = self.dir.join(MANIFEST);
        let mut buf = serde_json::to_vec_pretty(manifest)?;
        buf.push(b'\n');
        write_atomic(&path, &buf)?;
        Ok(path)
    }
}

pub const MANIFEST: &str = "manifest.json";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::config::{RunConfig, Task};

    #[test]
    fn hash_ignores_output_and_jobs() {
        let task = Task::VerifyAlgebra { lambda: "1".into(), mu: "1".into(), rank_one: 5, points: 5 };
        let a = RunConfig::new(task.clone());
        let b = RunConfig { output: "elsewhere".into(), jobs: 4, ..RunConfig::new(task) };
        assert_eq!(config_hash(&a), config_hash(&b));
        let c = RunConfig { seed: 1, ..a.clone() };
        assert_ne!(config_hash(&a), config_hash(&c));
        assert_eq!(config_hash(&a).len(), 64);
    }

    #[test]
    fn run_dir_lists_what_it_writes() {
        let tmp = tempfile::tempdir().unwrap();
        let mut d = RunDir::create(tmp.path().join("x")).unwrap();
        d.write("a.csv", b"1,2\n").unwrap();
        d.write("a.csv", b"1,3\n").unwrap();
        d.write_json("b.json", &[1, 2]).unwrap();
        assert!(d.write(MANIFEST, b"{}").is_err());
        let names: Vec<_> = d.outputs().iter().map(|o| o.path.as_str()).collect();
        assert_eq!(names, ["a.csv", "b.json"]);
        assert_eq!(fs::read(tmp.path().join("x/a.csv")).unwrap(), b"1,3\n");
        assert!(!tmp.path().join("x/a.csv.tmp").exists());
    }
}
