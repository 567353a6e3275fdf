use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sepprof::Error;

/// Process exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

/// Failure of a command, carrying the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub witness: Option<Value>,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind: "input",
            message: message.into(),
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn to_json(&self, command: &[String]) -> Value {
        let mut error = json!({ "kind": self.kind, "message": self.message });
        if let Some(w) = &self.witness {
            error["witness"] = w.clone();
        }
        json!({ "command": command, "error": error, "exit_code": self.code })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::SizeLimit { .. } | Error::BallCap { .. } => (EXIT_LIMIT, "resource-limit"),
            Error::Parse { .. } | Error::Json(_) => (EXIT_INPUT, "parse"),
            Error::Group(_) => (EXIT_INPUT, "group"),
            Error::Internal(_) => (EXIT_INPUT, "internal"),
            _ => (EXIT_INPUT, "input"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
            witness: None,
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind: "parse",
            message: e.to_string(),
            witness: None,
        }
    }
}

#[derive(Serialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub sha256: String,
}

/// Everything a command prints on success.
pub struct Report {
    command: Vec<String>,
    inputs: Vec<InputDigest>,
    outputs: Vec<PathBuf>,
    pub results: Value,
    pub flags: serde_json::Map<String, Value>,
    pub passed: bool,
    started: Instant,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            inputs: Vec::new(),
            outputs: Vec::new(),
            results: Value::Null,
            flags: serde_json::Map::new(),
            passed: true,
            started: Instant::now(),
        }
    }

    /// Reads an input file and records its digest.
    pub fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes =
            fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.to_path_buf(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes)
            .map_err(|_| Failure::input(format!("{}: not UTF-8", path.display())))
    }

    pub fn write(&mut self, path: &Path, contents: &str) -> Result<(), Failure> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)
                .map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
        }
        fs::write(path, contents)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }

    pub fn flag(&mut self, key: &str, value: impl Into<Value>) {
        self.flags.insert(key.to_string(), value.into());
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "flags": self.flags,
            "passed": self.passed,
            "timing": { "elapsed_ms": self.started.elapsed().as_millis() as u64 },
        });
        if !self.outputs.is_empty() {
            v["outputs"] = json!(self.outputs);
        }
        v
    }
}
