//! Flat, versioned check records so reports diff cleanly across runs.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

pub const REPORT_VERSION: &str = "1";

/// Pass direction: most checks require the residual to stay below tolerance,
/// strict-inequality checks (the non-commutative obstruction) require it to
/// stay above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Below,
    Above,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub residual: f64,
    pub tol: f64,
    pub direction: Direction,
    pub pass: bool,
}

impl CheckRecord {
    pub fn below(
        suite: &str,
        name: &str,
        params: &[(&str, String)],
        residual: f64,
        tol: f64,
    ) -> Self {
        Self {
            suite: suite.to_string(),
            name: name.to_string(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            residual,
            tol,
            direction: Direction::Below,
            pass: residual < tol,
        }
    }

    pub fn above(
        suite: &str,
        name: &str,
        params: &[(&str, String)],
        residual: f64,
        tol: f64,
    ) -> Self {
        Self {
            suite: suite.to_string(),
            name: name.to_string(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            residual,
            tol,
            direction: Direction::Above,
            pass: residual > tol,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub timestamp: u64,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(seed: u64, config: BTreeMap<String, String>, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            version: REPORT_VERSION.to_string(),
            timestamp,
            seed,
            config,
            checks,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Write a file atomically: to a temp sibling first, then rename into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
