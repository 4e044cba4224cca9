//! Batch commands behind the `shalg` binary. Each command reads JSON files,
//! runs checks or moves and returns a [`Certificate`]; nothing is printed
//! here, so the same entry points serve the binary and the tests.

mod files;
mod moves;
mod operad;
mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ainfty::AinftyError;
use crate::exactlin::LinError;
use crate::operadcore::OperadError;
use crate::transfer::{CheckLine, Status, TransferError};

pub use files::{ActionFile, MoveData, PresentationRef};
pub use moves::{cmd_move, MoveInputs, MoveKind};
pub use operad::{cmd_operad, OperadSub};
pub use verify::{cmd_verify, VerifyKind};

/// Names the directory searched for relative input paths that do not exist
/// relative to the working directory.
pub const FIXTURE_ENV: &str = "SHALG_FIXTURES";

/// Default truncation order.
pub const DEFAULT_N: usize = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Ainfty(#[from] AinftyError),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

impl CliError {
    fn input(path: &Path, message: impl ToString) -> Self {
        CliError::Input {
            path: path.display().to_string(),
            message: message.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

/// Bounds requested on the command line; commands fill in their defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub command: String,
    pub inputs: Vec<InputRecord>,
    /// Effective bounds after defaults.
    pub bounds: Bounds,
    pub checks: Vec<CheckLine>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<String>,
    pub pass: bool,
    /// The only field that varies between identical runs.
    pub wall_time_ms: u64,
}

impl Certificate {
    fn new(command: impl Into<String>) -> Self {
        Certificate {
            command: command.into(),
            inputs: Vec::new(),
            bounds: Bounds::default(),
            checks: Vec::new(),
            notes: Vec::new(),
            outputs: Vec::new(),
            pass: true,
            wall_time_ms: 0,
        }
    }

    fn finish(mut self, start: Instant) -> Self {
        self.pass = !self.checks.iter().any(CheckLine::failed);
        self.wall_time_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.failed()).count()
    }

    /// Process exit status: 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    /// The certificate with the timing field cleared.
    pub fn without_timing(&self) -> Self {
        Certificate {
            wall_time_ms: 0,
            ..self.clone()
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => serde_json::to_string_pretty(self).expect("certificates serialize") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for i in &self.inputs {
            let _ = writeln!(out, "input: {} sha256={}", i.path, i.sha256);
        }
        let mut b = Vec::new();
        if let Some(n) = self.bounds.n {
            b.push(format!("N={n}"));
        }
        if let Some(a) = self.bounds.arity {
            b.push(format!("arity={a}"));
        }
        if let Some(l) = self.bounds.length {
            b.push(format!("length={l}"));
        }
        if !b.is_empty() {
            let _ = writeln!(out, "bounds: {}", b.join(" "));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::NotApplicable => "N/A ",
            };
            let _ = write!(out, "{tag} {} [{}]", c.identity, c.anchor);
            if let Some(w) = &c.witness {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for o in &self.outputs {
            let _ = writeln!(out, "output: {o}");
        }
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "result: {verdict} ({} of {} checks failed)",
            self.failures(),
            self.checks.len()
        );
        let _ = writeln!(out, "wall time: {} ms", self.wall_time_ms);
        out
    }
}

/// Resolves a path given on the command line, falling back to the fixture
/// directory for relative paths.
pub fn resolve_input(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(FIXTURE_ENV) {
        Some(dir) if Path::new(&dir).join(path).exists() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Reads a file, recording its hash in the certificate.
fn read_input(cert: &mut Certificate, path: &Path) -> Result<(PathBuf, String), CliError> {
    let resolved = resolve_input(path);
    let text = std::fs::read_to_string(&resolved).map_err(|e| CliError::input(path, e))?;
    let digest = Sha256::digest(text.as_bytes());
    let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
    cert.inputs.push(InputRecord {
        path: path.display().to_string(),
        sha256,
    });
    Ok((resolved, text))
}

/// Parses JSON, reporting line and column on failure.
fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(path, e))
}

/// Writes `contents` to `dir/name` through a temporary file and a rename.
fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    std::fs::write(&tmp, contents).map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, &target).map_err(|e| CliError::Io(format!("{}: {e}", target.display())))?;
    Ok(target)
}
