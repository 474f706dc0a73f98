//! Verification reports.
//!
//! Every check in the crate produces a [`Report`] rather than an error: a
//! failing law is an outcome, and it carries a concrete witness.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Some instance could not be decided within the search bound.
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        })
    }
}

/// One variable of a witness assignment, already rendered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Binding {
    pub var: String,
    pub value: String,
}

impl Binding {
    pub fn new(var: impl Into<String>, value: impl Into<String>) -> Self {
        Binding { var: var.into(), value: value.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Failure {
    pub law: String,
    pub witness: Vec<Binding>,
}

impl Failure {
    /// Value bound to `var` in the witness, if any.
    pub fn value(&self, var: &str) -> Option<&str> {
        self.witness.iter().find(|b| b.var == var).map(|b| b.value.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub check: String,
    pub subject: String,
    pub status: Status,
    /// True when every instance in scope was enumerated.
    pub exhaustive: bool,
    pub checked: u64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn law(&self) -> Option<&str> {
        self.failure.as_ref().map(|f| f.law.as_str())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] checked={} {} seed={}",
            self.status,
            self.check,
            self.subject,
            self.checked,
            if self.exhaustive { "exhaustive" } else { "sampled" },
            self.seed
        )?;
        if let Some(fail) = &self.failure {
            write!(f, "\n  violated: {}", fail.law)?;
            if !fail.witness.is_empty() {
                let w: Vec<String> =
                    fail.witness.iter().map(|b| format!("{}={}", b.var, b.value)).collect();
                write!(f, "\n  witness: {}", w.join(", "))?;
            }
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}

/// Signals that a check already recorded its first failure.
#[derive(Debug)]
pub(crate) struct Stop;

/// Accumulates instance counts and the first failure of a check.
pub(crate) struct Tally {
    report: Report,
    unknown: bool,
}

impl Tally {
    pub fn new(check: &str, subject: impl Into<String>, seed: u64) -> Self {
        Tally {
            report: Report {
                check: check.to_string(),
                subject: subject.into(),
                status: Status::Pass,
                exhaustive: true,
                checked: 0,
                seed,
                failure: None,
                notes: Vec::new(),
            },
            unknown: false,
        }
    }

    pub fn set_exhaustive(&mut self, exhaustive: bool) {
        self.report.exhaustive &= exhaustive;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }

    pub fn unknown(&mut self) {
        self.report.checked += 1;
        self.unknown = true;
    }

    /// Counts one instance; on the first violation records the witness and
    /// stops the check.
    pub fn ensure<W>(&mut self, ok: bool, law: &str, witness: W) -> Result<(), Stop>
    where
        W: FnOnce() -> Vec<Binding>,
    {
        self.report.checked += 1;
        if ok {
            Ok(())
        } else {
            self.report.failure = Some(Failure { law: law.to_string(), witness: witness() });
            Err(Stop)
        }
    }

    /// Folds a sub-check into this one, stopping on its failure.
    pub fn absorb(&mut self, sub: &Report) -> Result<(), Stop> {
        self.report.checked += sub.checked;
        self.report.exhaustive &= sub.exhaustive;
        self.report.notes.extend(sub.notes.iter().cloned());
        match sub.status {
            Status::Pass => Ok(()),
            Status::Unknown => {
                self.unknown = true;
                Ok(())
            }
            Status::Fail => {
                let mut failure = sub.failure.clone().unwrap_or(Failure { law: sub.check.clone(), witness: Vec::new() });
                failure.law = format!("{}: {}", sub.check, failure.law);
                self.report.failure = Some(failure);
                Err(Stop)
            }
        }
    }

    pub fn finish(mut self) -> Report {
        self.report.status = if self.report.failure.is_some() {
            Status::Fail
        } else if self.unknown {
            Status::Unknown
        } else {
            Status::Pass
        };
        self.report
    }
}

/// Renders `(name, value)` pairs as witness bindings.
pub(crate) fn witness<const N: usize>(pairs: [(&str, String); N]) -> Vec<Binding> {
    pairs.into_iter().map(|(v, s)| Binding::new(v, s)).collect()
}
