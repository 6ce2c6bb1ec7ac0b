//! Run reports: human text on stdout or one JSON record.
//!
//! Record schema (object keys are written in sorted order):
//!
//! ```text
//! {
//!   "command": [argv...],
//!   "inputs":  [{"role": "graph", "path": "...", "sha256": "..."}],
//!   "outputs": {...command specific...},
//!   "checks":  [{"name": "...", "pass": true, "detail": "..."}],
//!   "pass":    true
//! }
//! ```
//!
//! Wall time is printed to stderr only, so identical runs give identical
//! records.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub struct Input {
    pub role: &'static str,
    pub path: String,
    pub sha256: String,
}

impl Input {
    pub fn new(role: &'static str, path: &str, bytes: &[u8]) -> Input {
        Input {
            role,
            path: path.to_owned(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<Input>,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
    /// Lines printed in text mode before the check summary.
    pub text: Vec<String>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> RunReport {
        RunReport {
            command,
            inputs: Vec::new(),
            outputs: Map::new(),
            checks: Vec::new(),
            text: Vec::new(),
        }
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) {
        self.outputs.insert(key.to_owned(), value.into());
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    pub fn check(&mut self, name: &str, outcome: Result<String, String>) {
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            name: name.to_owned(),
            pass,
            detail,
        });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let record = json!({
            "command": self.command,
            "inputs": self.inputs.iter().map(|i| json!({
                "role": i.role,
                "path": i.path,
                "sha256": i.sha256,
            })).collect::<Vec<_>>(),
            "outputs": self.outputs,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "pass": c.pass,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "pass": self.pass(),
        });
        let mut s = serde_json::to_string_pretty(&record).expect("json values always serialize");
        s.push('\n');
        s
    }

    /// Output lines, one `check` line per self-check, then `PASS` or `FAIL`.
    pub fn to_text(&self, with_checks: bool) -> String {
        let mut s = String::new();
        for l in &self.text {
            s.push_str(l);
            s.push('\n');
        }
        if with_checks {
            for c in &self.checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    s.push_str(&format!("check {} {verdict}\n", c.name));
                } else {
                    s.push_str(&format!("check {} {verdict}: {}\n", c.name, c.detail));
                }
            }
            s.push_str(if self.pass() { "PASS\n" } else { "FAIL\n" });
        }
        s
    }
}
