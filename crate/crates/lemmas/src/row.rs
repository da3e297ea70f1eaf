use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::Convention;
use crate::descriptor::CheckId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
    Skipped,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Vacuous => "VACUOUS",
            Status::Skipped => "SKIPPED",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: CheckId,
    pub instance: String,
    pub group_id: String,
    pub params: Value,
    pub status: Status,
    /// `null` for VACUOUS rows; a `reason` object for SKIPPED and UNKNOWN.
    pub witness: Value,
    /// Zero unless timing was requested, so reports stay reproducible.
    pub millis: u64,
}

/// `group_id#` followed by the first 12 hex digits of the SHA-256 of the
/// compact JSON parameters.
pub fn instance_id(group_id: &str, params: &Value) -> String {
    let text = serde_json::to_string(params).expect("json values serialize");
    let digest = Sha256::digest(text.as_bytes());
    format!("{group_id}#{}", &hex::encode(digest)[..12])
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    #[serde(rename = "PASS")]
    pub pass: usize,
    #[serde(rename = "FAIL")]
    pub fail: usize,
    #[serde(rename = "VACUOUS")]
    pub vacuous: usize,
    #[serde(rename = "SKIPPED")]
    pub skipped: usize,
    #[serde(rename = "UNKNOWN")]
    pub unknown: usize,
}

impl StatusCounts {
    pub fn add(&mut self, status: Status) {
        match status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Vacuous => self.vacuous += 1,
            Status::Skipped => self.skipped += 1,
            Status::Unknown => self.unknown += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.vacuous + self.skipped + self.unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCounts {
    pub check: CheckId,
    #[serde(flatten)]
    pub counts: StatusCounts,
}

/// Final line of a report. `summary` is always `true` and tells it apart
/// from rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub summary: bool,
    pub rows: usize,
    pub groups: usize,
    pub convention: Convention,
    pub instance_cap: usize,
    pub per_check: Vec<CheckCounts>,
    pub totals: StatusCounts,
}
