//! Pass/fail reports with self-contained counterexample witnesses.
//!
//! Every failed identity check carries the offending basis location and
//! both sides of the identity as rendered elements, so a report refutes a
//! claim on its own, without re-running the computation.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// Where an identity broke and what both sides evaluated to.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    /// Basis location, e.g. `v=(1,2)` or `u=(1,0), v=(0,1)`.
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(
        location: impl Into<String>,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
    ) -> Self {
        Witness {
            location: location.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Outcome of one named axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    /// Informational checks never affect the overall verdict.
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: CheckStatus::Pass,
            informational: false,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        CheckReport {
            name: name.into(),
            status: CheckStatus::Fail,
            informational: false,
            witness: Some(witness),
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.informational { " (informational)" } else { "" };
        match (&self.status, &self.witness) {
            (CheckStatus::Pass, _) => write!(f, "{}{tag}: PASS", self.name),
            (CheckStatus::Fail, Some(w)) => write!(
                f,
                "{}{tag}: FAIL at {}: {} != {}",
                self.name, w.location, w.lhs, w.rhs
            ),
            (CheckStatus::Fail, None) => write!(f, "{}{tag}: FAIL", self.name),
        }
    }
}

/// A bundle of named checks with an overall verdict: the conjunction of all
/// non-informational checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: CheckReport) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn overall_pass(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| !c.informational)
            .all(CheckReport::passed)
    }

    pub fn find(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        write!(
            f,
            "overall: {}",
            if self.overall_pass() { "PASS" } else { "FAIL" }
        )
    }
}
