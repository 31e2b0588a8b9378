//! Verification outcomes and their JSON form.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::series::Mismatch;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

/// The first differing coefficient, rendered exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchRecord {
    pub n: i64,
    pub lhs: String,
    pub rhs: String,
}

impl From<&Mismatch> for MismatchRecord {
    fn from(m: &Mismatch) -> Self {
        MismatchRecord { n: m.n, lhs: m.lhs.to_string(), rhs: m.rhs.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub order: i64,
    pub status: Status,
    pub first_mismatch: Option<MismatchRecord>,
    pub message: Option<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn from_outcome(
        name: &str,
        params: Vec<(String, String)>,
        order: i64,
        outcome: Result<Option<Mismatch>>,
        elapsed: Duration,
    ) -> Self {
        let (status, first_mismatch, message) = match outcome {
            Ok(None) => (Status::Pass, None, None),
            Ok(Some(m)) => (Status::Fail, Some(MismatchRecord::from(&m)), None),
            Err(e) => (Status::Error, None, Some(e.to_string())),
        };
        VerificationReport {
            name: name.to_string(),
            params: params.into_iter().collect(),
            order,
            status,
            first_mismatch,
            message,
            elapsed,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn record(&self, timings: bool) -> ResultRecord {
        ResultRecord {
            name: self.name.clone(),
            params: self.params.clone(),
            status: self.status,
            first_mismatch: self.first_mismatch.clone(),
            message: self.message.clone(),
            elapsed_ms: timings.then_some(self.elapsed.as_millis() as u64),
        }
    }
}

/// One entry of the `results` array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ResultRecord {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub first_mismatch: Option<MismatchRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub order: i64,
    pub n_max: i64,
    pub results: Vec<ResultRecord>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Pass)
    }

    pub fn any_failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    pub fn any_error(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
