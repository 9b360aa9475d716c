use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::anchors::anchor;
use crate::error::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Witness data: integers and strings only, so exact values stay exact.
pub type Witness = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: Witness,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub field: String,
    pub assertions: Vec<Assertion>,
    pub summary: Summary,
    /// Set when the run stopped early on a time budget or a parse error.
    pub aborted: Option<String>,
    /// Milliseconds per assertion id; excluded from the body.
    #[serde(default)]
    pub timings: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(scenario: &str, seed: u64, field: &str) -> Self {
        Report {
            scenario: scenario.to_string(),
            seed,
            field: field.to_string(),
            assertions: Vec::new(),
            summary: Summary::default(),
            aborted: None,
            timings: BTreeMap::new(),
        }
    }

    /// Sorts by assertion id and recounts the summary.
    pub fn finish(mut self) -> Self {
        self.assertions.sort_by(|a, b| a.id.cmp(&b.id));
        let count = |s| self.assertions.iter().filter(|a| a.status == s).count();
        self.summary = Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            inconclusive: count(Status::Inconclusive),
        };
        self
    }

    pub fn failed(&self) -> bool {
        self.assertions.iter().any(|a| a.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        !self.failed() && self.aborted.is_none()
    }

    pub fn get(&self, id: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.id == id)
    }

    /// 1 when an assertion failed, 2 when the run was cut short, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else if self.aborted.is_some() {
            2
        } else {
            0
        }
    }

    /// The deterministic part of the report as JSON.
    pub fn body_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string_pretty(&v).unwrap()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn table(&self) -> String {
        let width = self.assertions.iter().map(|a| a.id.len()).max().unwrap_or(2).max(9);
        let mut s = String::new();
        writeln!(s, "scenario {} (field {}, seed {})", self.scenario, self.field, self.seed).unwrap();
        writeln!(s, "{:<width$}  {:<12}  {:>8}", "assertion", "status", "ms").unwrap();
        for a in &self.assertions {
            let status = format!("{:?}", a.status).to_lowercase();
            let ms = self.timings.get(&a.id).copied().unwrap_or(0);
            writeln!(s, "{:<width$}  {:<12}  {:>8}", a.id, status, ms).unwrap();
        }
        let sm = &self.summary;
        write!(s, "{} pass, {} fail, {} inconclusive", sm.pass, sm.fail, sm.inconclusive).unwrap();
        if let Some(why) = &self.aborted {
            write!(s, "; aborted: {why}").unwrap();
        }
        s
    }
}

/// Collects assertions for one scenario run.
pub struct Recorder {
    report: Report,
    deadline: Option<Instant>,
}

impl Recorder {
    pub fn new(scenario: &str, seed: u64, field: &str, deadline: Option<Instant>) -> Self {
        Recorder {
            report: Report::new(scenario, seed, field),
            deadline,
        }
    }

    /// Runs one assertion. Engine budget errors make it inconclusive, other
    /// errors make it fail; a passed deadline aborts the scenario.
    pub fn check<Fun>(&mut self, id: impl Into<String>, anchor_key: &str, body: Fun) -> Result<Status, HarnessError>
    where
        Fun: FnOnce(&mut Witness) -> Result<Status, HarnessError>,
    {
        self.check_anchored(id, anchor(anchor_key), body)
    }

    pub fn check_anchored<Fun>(&mut self, id: impl Into<String>, anchor: &str, body: Fun) -> Result<Status, HarnessError>
    where
        Fun: FnOnce(&mut Witness) -> Result<Status, HarnessError>,
    {
        let id = id.into();
        if self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(HarnessError::Budget(format!("time budget exhausted before {id}")));
        }
        let start = Instant::now();
        let mut witness = Witness::new();
        let status = match body(&mut witness) {
            Ok(s) => s,
            Err(e) if e.is_budget() => {
                witness.insert("budget".into(), Value::String(e.to_string()));
                Status::Inconclusive
            }
            Err(e) => {
                witness.insert("error".into(), Value::String(e.to_string()));
                Status::Fail
            }
        };
        self.push(id, anchor, status, witness, start.elapsed());
        Ok(status)
    }

    pub fn push(&mut self, id: String, anchor: &str, status: Status, witness: Witness, elapsed: Duration) {
        self.report.timings.insert(id.clone(), elapsed.as_millis() as u64);
        self.report.assertions.push(Assertion {
            id,
            anchor: anchor.to_string(),
            status,
            witness,
        });
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    /// Closes the report; an error from the scenario body becomes `aborted`.
    pub fn finish(mut self, outcome: Result<(), HarnessError>) -> Report {
        if let Err(e) = outcome {
            self.report.aborted = Some(e.to_string());
        }
        self.report.finish()
    }
}

pub fn text(s: impl ToString) -> Value {
    Value::String(s.to_string())
}

pub fn int(n: usize) -> Value {
    Value::from(n as u64)
}

pub fn texts<I: IntoIterator<Item = S>, S: ToString>(items: I) -> Value {
    Value::Array(items.into_iter().map(|s| Value::String(s.to_string())).collect())
}
