//! Verification reports: named checks with witnesses, plus free-form extracted data.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// A basis coefficient where expectation and computation disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub at: String,
    pub expected: String,
    pub actual: String,
}

impl Witness {
    pub fn new(at: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        Witness { at: at.into(), expected: expected.to_string(), actual: actual.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub data: BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(Check { name: name.into(), status: Status::Pass, detail: None, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>, witness: Option<Witness>) {
        self.push(Check { name: name.into(), status: Status::Fail, detail: Some(detail.into()), witness });
    }

    pub fn skip(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(Check { name: name.into(), status: Status::Skip, detail: Some(detail.into()), witness: None });
    }

    /// Records a pass, or a failure carrying the witness.
    pub fn record(&mut self, name: impl Into<String>, outcome: std::result::Result<(), Witness>) {
        match outcome {
            Ok(()) => self.pass(name),
            Err(w) => self.fail(name, "mismatch", Some(w)),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        if ok {
            self.pass(name)
        } else {
            self.fail(name, detail, None)
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn insert_data(&mut self, key: impl Into<String>, value: serde_json::Value) {
        self.data.insert(key.into(), value);
    }

    /// Appends another report, prefixing its check names and data keys.
    pub fn merge(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.data {
            self.data.insert(format!("{prefix}{k}"), v);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).map_or(false, |c| c.status == Status::Pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            write!(f, "[{tag}] {}", c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                writeln!(f, "       at {}: expected {}, got {}", w.at, w.expected, w.actual)?;
            }
        }
        for (k, v) in &self.data {
            writeln!(f, "  {k} = {v}")?;
        }
        Ok(())
    }
}
