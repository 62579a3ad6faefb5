use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement the check certifies.
    pub claim: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub calibration_hash: Option<String>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{tag}  {}: computed {}, expected {}", c.name, c.computed, c.expected));
            if let Some(ms) = c.elapsed_ms {
                out.push_str(&format!(" ({ms} ms)"));
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        out.push_str(&format!("{}: {} checks, {} failed\n", self.suite, self.checks.len(), failed));
        out
    }
}

/// Collects checks for one suite, timing each one.
pub struct Recorder {
    timings: bool,
    started: Instant,
    pub checks: Vec<Check>,
}

impl Recorder {
    pub fn new(timings: bool) -> Self {
        Recorder { timings, started: Instant::now(), checks: Vec::new() }
    }

    /// Restarts the clock for the next check.
    pub fn start(&mut self) {
        self.started = Instant::now();
    }

    pub fn record(&mut self, name: &str, claim: &str, pass: bool, computed: impl ToString, expected: impl ToString) {
        let elapsed = self.started.elapsed().as_millis() as u64;
        self.checks.push(Check {
            name: name.to_string(),
            claim: claim.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            computed: computed.to_string(),
            expected: expected.to_string(),
            elapsed_ms: self.timings.then_some(elapsed),
        });
        self.started = Instant::now();
    }

    /// Records `computed == expected`.
    pub fn equal<T: PartialEq + ToString>(&mut self, name: &str, claim: &str, computed: T, expected: T) {
        let pass = computed == expected;
        self.record(name, claim, pass, computed, expected);
    }

    /// Records a boolean property; `detail` describes what was tested.
    pub fn holds(&mut self, name: &str, claim: &str, pass: bool, detail: &str) {
        let computed = if pass { detail.to_string() } else { format!("violated ({detail})") };
        self.record(name, claim, pass, computed, detail);
    }
}
