//! Machine-readable outcomes of bounded checks.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

use crate::theta::Window;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// One bounded check. A failure always carries a witness and an
/// inconclusive result always carries a reason.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    /// The statement the check certifies.
    pub certifies: String,
    pub window: Window,
    pub max_terminus: Option<usize>,
    pub status: Status,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn is_well_formed(&self) -> bool {
        match self.status {
            Status::Pass => true,
            Status::Fail => self.witness.is_some(),
            Status::Inconclusive => self.reason.is_some(),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<12} {:<28} [{}] {} ({:.1} ms)",
            self.status.to_string(),
            self.check_id,
            self.window,
            self.summary,
            self.wall_time_ms
        )?;
        if let Some(r) = &self.reason {
            write!(f, "\n    reason: {r}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

/// What a check function returns before timing and labelling.
pub enum Outcome {
    Pass(String),
    Fail { summary: String, witness: Value },
    Inconclusive { summary: String, reason: String },
}

impl Outcome {
    pub fn fail(summary: impl Into<String>, witness: impl Serialize) -> Outcome {
        Outcome::Fail {
            summary: summary.into(),
            witness: serde_json::to_value(witness).unwrap_or(Value::Null),
        }
    }
}

pub struct Check {
    pub id: &'static str,
    pub certifies: &'static str,
}

impl Check {
    pub fn run(
        &self,
        window: Window,
        max_terminus: Option<usize>,
        body: impl FnOnce() -> Outcome,
    ) -> VerificationReport {
        let start = Instant::now();
        let outcome = body();
        let elapsed: Duration = start.elapsed();
        let (status, summary, witness, reason) = match outcome {
            Outcome::Pass(s) => (Status::Pass, s, None, None),
            Outcome::Fail { summary, witness } => (Status::Fail, summary, Some(witness), None),
            Outcome::Inconclusive { summary, reason } => (Status::Inconclusive, summary, None, Some(reason)),
        };
        VerificationReport {
            check_id: self.id.to_string(),
            certifies: self.certifies.to_string(),
            window,
            max_terminus,
            status,
            summary,
            witness,
            reason,
            wall_time_ms: elapsed.as_secs_f64() * 1000.0,
        }
    }
}

/// The worst status in a stream; an empty stream passes.
pub fn overall(reports: &[VerificationReport]) -> Status {
    reports.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
}

/// Exit code: 0 pass, 1 any failure, 2 inconclusive without failures.
pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 2,
    }
}
