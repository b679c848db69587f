use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// Provenance of one invocation. Written next to the primary output as
/// `<out>.manifest.json`; the only file whose bytes vary between runs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub version: &'static str,
    pub wall_time_seconds: f64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Tracks the files a command reads and writes.
pub struct Run {
    started: Instant,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
    stdout: Vec<String>,
}

impl Run {
    pub fn new() -> Self {
        Run { started: Instant::now(), inputs: Vec::new(), outputs: Vec::new(), stdout: Vec::new() }
    }

    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        self.inputs.push(FileDigest { path: path.display().to_string(), sha256: sha256_hex(text.as_bytes()) });
        Ok(text)
    }

    pub fn write(&mut self, path: &Path, contents: &str) -> Result<(), CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        fs::write(path, contents).map_err(|e| CliError::io(path, e))?;
        self.outputs.push(FileDigest { path: path.display().to_string(), sha256: sha256_hex(contents.as_bytes()) });
        Ok(())
    }

    /// Writes to `out` when given, otherwise queues the text for stdout.
    pub fn emit(&mut self, out: Option<&Path>, contents: String) -> Result<(), CliError> {
        match out {
            Some(p) => self.write(p, &contents),
            None => {
                self.stdout.push(contents);
                Ok(())
            }
        }
    }

    pub fn print(&mut self, contents: String) {
        self.stdout.push(contents);
    }

    /// Flushes stdout and, if anything was written under `out`, the manifest.
    pub fn finish(self, command: Vec<String>, out: Option<&Path>) -> Result<(), CliError> {
        for s in &self.stdout {
            if s.ends_with('\n') {
                print!("{s}");
            } else {
                println!("{s}");
            }
        }
        let Some(out) = out else { return Ok(()) };
        if self.outputs.is_empty() {
            return Ok(());
        }
        let manifest = RunManifest {
            command,
            inputs: self.inputs,
            outputs: self.outputs,
            version: maniplex::VERSION,
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
        };
        let path = manifest_path(out);
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    // normalizing drops a trailing separator on directory outputs
    let clean: PathBuf = out.components().collect();
    let mut name = clean.file_name().map(|n| n.to_os_string()).unwrap_or_else(|| "out".into());
    name.push(".manifest.json");
    clean.with_file_name(name)
}
