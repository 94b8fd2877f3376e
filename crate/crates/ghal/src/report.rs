//! Verification reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Stable label of the statement being checked.
    pub anchor: String,
    pub input: String,
    pub digest: String,
    pub verdict: Verdict,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub timestamp: String,
    pub suite: String,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub overall: Verdict,
}

impl Report {
    /// Sorts inputs by path and checks by name, then digest, then input.
    pub fn new(suite: &str, mut inputs: Vec<InputDigest>, mut checks: Vec<CheckRecord>) -> Report {
        inputs.sort_by(|a, b| a.path.cmp(&b.path));
        checks.sort_by(|a, b| (&a.name, &a.digest, &a.input).cmp(&(&b.name, &b.digest, &b.input)));
        let passed = checks.iter().filter(|c| c.verdict == Verdict::Pass).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        Report {
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            suite: suite.into(),
            inputs,
            overall: Verdict::from(summary.failed == 0),
            checks,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn without_timestamp(&self) -> Report {
        Report { timestamp: String::new(), ..self.clone() }
    }
}
