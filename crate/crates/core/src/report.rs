use std::fmt;

use serde::{Deserialize, Serialize};

/// A failed instance of a checked claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of mechanically checking a claim over a finite range of instances.
///
/// `pass` holds exactly when `witnesses` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub instances: u64,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
    /// What one instance is, for human-readable summaries ("primes", "specs").
    #[serde(skip)]
    pub unit: &'static str,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>, unit: &'static str) -> Self {
        VerificationReport {
            claim: claim.into(),
            instances: 0,
            pass: true,
            witnesses: Vec::new(),
            unit,
        }
    }

    /// Records one checked instance.
    pub fn check(
        &mut self,
        ok: bool,
        instance: impl FnOnce() -> String,
        expected: impl FnOnce() -> String,
        actual: impl FnOnce() -> String,
    ) {
        self.instances += 1;
        if !ok {
            self.fail(instance(), expected(), actual());
        }
    }

    /// Records a failure that is not tied to a counted instance.
    pub fn fail(&mut self, instance: String, expected: String, actual: String) {
        self.witnesses.push(Witness {
            instance,
            expected,
            actual,
        });
        self.pass = false;
    }

    /// Folds another report into this one. Instance counts add and witnesses
    /// concatenate, so merging is associative.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.instances += other.instances;
        self.witnesses.extend(other.witnesses);
        self.pass = self.witnesses.is_empty();
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        write!(
            f,
            "{}: {verdict} ({} {} checked)",
            self.claim, self.instances, self.unit
        )?;
        for w in &self.witnesses {
            write!(f, "\n  {}: expected {}, actual {}", w.instance, w.expected, w.actual)?;
        }
        Ok(())
    }
}
