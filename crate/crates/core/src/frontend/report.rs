use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::check::{Check, CheckReport, Status};

pub const TOOL: &str = "hopfore";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNRESOLVED: i32 = 3;

/// The machine-readable result of one command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    /// `sha256:` of the input presentation text.
    pub input_digest: String,
    pub command: String,
    pub algebra: Option<String>,
    pub status: Status,
    pub checks: Vec<Check>,
    pub data: BTreeMap<String, Value>,
}

pub fn digest(input: &str) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(input.as_bytes())))
}

impl Report {
    pub fn new(command: &str, input: &str, algebra: Option<&str>) -> Self {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            input_digest: digest(input),
            command: command.into(),
            algebra: algebra.map(str::to_string),
            status: Status::Pass,
            checks: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.refresh();
    }

    pub fn extend(&mut self, report: CheckReport) {
        self.checks.extend(report.checks);
        self.refresh();
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.into(), value.into());
    }

    fn refresh(&mut self) {
        self.status = CheckReport {
            checks: self.checks.clone(),
        }
        .status();
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
            Status::Unresolved => EXIT_UNRESOLVED,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering: one line per check, then the data entries.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(a) = &self.algebra {
            out.push_str(&format!("{} {}: {}\n", self.command, a, status_word(self.status)));
        } else {
            out.push_str(&format!("{}: {}\n", self.command, status_word(self.status)));
        }
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}", status_word(c.status), c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            if c.status != Status::Pass && !c.detail.is_empty() {
                out.push_str(&format!("  ({})", c.detail));
            }
            out.push('\n');
        }
        for (k, v) in &self.data {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {text}\n"));
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Unresolved => "unresolved",
    }
}
