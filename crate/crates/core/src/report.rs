use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one named check. Witnesses describe failures (or, for passing checks,
/// optional notes such as warnings).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub witnesses: Vec<Value>,
}

impl Report {
    pub fn pass(check: impl Into<String>) -> Self {
        Self { check: check.into(), status: Status::Pass, witnesses: Vec::new() }
    }

    /// Passing when `witnesses` is empty.
    pub fn from_witnesses(check: impl Into<String>, witnesses: Vec<Value>) -> Self {
        let status = if witnesses.is_empty() { Status::Pass } else { Status::Fail };
        Self { check: check.into(), status, witnesses }
    }

    pub fn fail(check: impl Into<String>, witness: Value) -> Self {
        Self { check: check.into(), status: Status::Fail, witnesses: vec![witness] }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_note(mut self, note: Value) -> Self {
        self.witnesses.push(note);
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Combined status of several reports.
pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(Report::passed)
}
