//! Serializable reports produced by the law checkers and theorem verifiers.

use serde::Serialize;
use serde_json::Value;

/// Outcome of one law over a batch of randomized or exhaustive cases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawEntry {
    pub law: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

/// A fact that is searched for rather than required, such as a witness of
/// noncommutativity. Observations never count as failures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub name: String,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// Pass/fail summary for a family of laws.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub subject: String,
    pub entries: Vec<LawEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<Observation>,
}

impl LawReport {
    pub fn new(subject: impl Into<String>) -> Self {
        LawReport { subject: subject.into(), entries: Vec::new(), observations: Vec::new() }
    }

    fn entry_mut(&mut self, law: &str) -> &mut LawEntry {
        if let Some(i) = self.entries.iter().position(|e| e.law == law) {
            return &mut self.entries[i];
        }
        self.entries.push(LawEntry { law: law.to_string(), cases: 0, failures: 0, counterexample: None });
        self.entries.last_mut().expect("just pushed")
    }

    /// Records one case of `law`. The counterexample closure only runs for the
    /// first failure of that law.
    pub fn record(&mut self, law: &str, ok: bool, counterexample: impl FnOnce() -> Value) {
        let e = self.entry_mut(law);
        e.cases += 1;
        if !ok {
            e.failures += 1;
            if e.counterexample.is_none() {
                e.counterexample = Some(counterexample());
            }
        }
    }

    /// Records a case whose evaluation produced an error; the error counts as a failure.
    pub fn record_result(&mut self, law: &str, outcome: crate::Result<bool>, counterexample: impl FnOnce() -> Value) {
        match outcome {
            Ok(ok) => self.record(law, ok, counterexample),
            Err(err) => self.record(law, false, || serde_json::json!({ "error": err.to_string() })),
        }
    }

    /// Ensures an entry exists even when no case was run.
    pub fn touch(&mut self, law: &str) {
        self.entry_mut(law);
    }

    pub fn observe(&mut self, name: &str, witness: Option<Value>) {
        self.observations.push(Observation { name: name.to_string(), found: witness.is_some(), witness });
    }

    pub fn merge(&mut self, other: LawReport) {
        for e in other.entries {
            let mine = self.entry_mut(&e.law);
            mine.cases += e.cases;
            mine.failures += e.failures;
            if mine.counterexample.is_none() {
                mine.counterexample = e.counterexample;
            }
        }
        self.observations.extend(other.observations);
    }

    pub fn total_failures(&self) -> u64 {
        self.entries.iter().map(|e| e.failures).sum()
    }

    pub fn total_cases(&self) -> u64 {
        self.entries.iter().map(|e| e.cases).sum()
    }

    pub fn passed(&self) -> bool {
        self.total_failures() == 0
    }

    pub fn entry(&self, law: &str) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.law == law)
    }

    pub fn observation(&self, name: &str) -> Option<&Observation> {
        self.observations.iter().find(|o| o.name == name)
    }

    /// Laws with at least one failure.
    pub fn failing_laws(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| e.failures > 0).map(|e| e.law.as_str()).collect()
    }
}

/// Result of verifying one theorem on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictReport {
    pub theorem: String,
    pub instance: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    /// Set when the theorem is outside the instance's declared scope; the
    /// verdict is then informational and `failures` stays zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scoped_out: Option<String>,
    /// A recorded counterexample for an out-of-scope theorem, if one was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recorded_counterexample: Option<Value>,
}

impl VerdictReport {
    pub fn new(theorem: &str, instance: &str) -> Self {
        VerdictReport {
            theorem: theorem.to_string(),
            instance: instance.to_string(),
            cases: 0,
            failures: 0,
            counterexample: None,
            scoped_out: None,
            recorded_counterexample: None,
        }
    }

    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(counterexample());
            }
        }
    }

    pub fn record_result(&mut self, outcome: crate::Result<bool>, counterexample: impl FnOnce() -> Value) {
        match outcome {
            Ok(ok) => self.record(ok, counterexample),
            Err(err) => self.record(false, || serde_json::json!({ "error": err.to_string() })),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn is_scoped_out(&self) -> bool {
        self.scoped_out.is_some()
    }
}
