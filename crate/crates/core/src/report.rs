//! Verification reports shared by every check.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::{Radical, SparseOperator};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationRecord {
    pub relation: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Outcome of one verification suite at fixed `(rank, level)`.
///
/// Entries keep insertion order. `max_deviation` is the largest magnitude
/// among failing witnesses, rendered exactly; `"0"` means every relation
/// held exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub rank: usize,
    pub level: u32,
    pub passed: bool,
    pub max_deviation: String,
    pub details: Vec<RelationRecord>,
    #[serde(skip)]
    pub notes: Vec<String>,
    #[serde(skip)]
    deviation: Radical,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, rank: usize, level: u32) -> Self {
        Self {
            check: check.into(),
            rank,
            level,
            passed: true,
            max_deviation: "0".into(),
            details: Vec::new(),
            notes: Vec::new(),
            deviation: Radical::zero(),
        }
    }

    /// Records a relation. `failure` carries the witness text and the
    /// magnitude of the violation.
    pub fn record(&mut self, relation: impl Into<String>, failure: Option<(String, Radical)>) {
        let relation = relation.into();
        match failure {
            None => self.details.push(RelationRecord {
                relation,
                passed: true,
                witness: None,
            }),
            Some((witness, magnitude)) => {
                self.passed = false;
                let magnitude = magnitude.abs();
                if magnitude > self.deviation || self.deviation.is_zero() {
                    self.deviation = magnitude;
                    self.max_deviation = self.deviation.to_string();
                }
                self.details.push(RelationRecord {
                    relation,
                    passed: false,
                    witness: Some(witness),
                });
            }
        }
    }

    pub fn record_bool(&mut self, relation: impl Into<String>, passed: bool, witness: impl FnOnce() -> String) {
        let failure = (!passed).then(|| (witness(), Radical::from_integer(1)));
        self.record(relation, failure);
    }

    /// Records that `residual` (left side minus right side) is the zero
    /// operator; on failure the witness is its largest entry.
    pub fn record_zero<L>(&mut self, relation: impl Into<String>, residual: &SparseOperator, label: L)
    where
        L: Fn(usize) -> String,
    {
        let failure = residual
            .max_abs_entry()
            .map(|(r, c, v)| (format!("{} {} {}", label(r), label(c), v), v));
        self.record(relation, failure);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Appends every record of `other`, prefixing relation names.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for d in other.details {
            let relation = format!("{prefix}{}", d.relation);
            if d.passed {
                self.record(relation, None);
            } else {
                let witness = d.witness.unwrap_or_default();
                let magnitude = if other.deviation.is_zero() {
                    Radical::from_integer(1)
                } else {
                    other.deviation.clone()
                };
                self.record(relation, Some((witness, magnitude)));
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationRecord> {
        self.details.iter().filter(|d| !d.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (r={}, k={}): {}  max_deviation={}",
            self.check,
            self.rank,
            self.level,
            if self.passed { "PASS" } else { "FAIL" },
            self.max_deviation
        )?;
        for d in &self.details {
            write!(f, "  [{}] {}", if d.passed { "PASS" } else { "FAIL" }, d.relation)?;
            if let Some(w) = &d.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
