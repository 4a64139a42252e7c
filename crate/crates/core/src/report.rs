//! Check records shared by every verification routine, and the top-level
//! report emitted by the command-line tool.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRef {
    pub p: u32,
    pub q: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub toolkit: String,
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub model: Option<ModelRef>,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub data: serde_json::Value,
    pub versions: Versions,
}

impl Report {
    pub fn pass(&self) -> bool {
        all_pass(&self.checks)
    }

    /// Appends a check, suffixing the name if it is already taken so names
    /// stay unique within the report.
    pub fn push(&mut self, mut check: Check) {
        if self.checks.iter().any(|c| c.name == check.name) {
            let base = check.name.clone();
            let mut k = 2;
            while self.checks.iter().any(|c| c.name == format!("{base}#{k}")) {
                k += 1;
            }
            check.name = format!("{base}#{k}");
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }
}
