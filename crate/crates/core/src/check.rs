//! Structured pass/fail reports for identity checks.

use std::fmt;

use crate::error::Error;
use crate::operator::LinearOperator;

/// One failed case. `witness` names the first basis vector on which the
/// two sides differ; matrices are kept when the check compared operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub witness: String,
    pub lhs: Option<LinearOperator>,
    pub rhs: Option<LinearOperator>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), cases: 0, passed: 0, failures: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// Compare two operators; on mismatch the first differing column is
    /// the witness.
    pub fn compare(&mut self, case: impl Into<String>, lhs: LinearOperator, rhs: LinearOperator) {
        self.cases += 1;
        match lhs.first_difference(&rhs) {
            None => self.passed += 1,
            Some(witness) => self.failures.push(Failure { case: case.into(), witness, lhs: Some(lhs), rhs: Some(rhs) }),
        }
    }

    /// Record a case decided elsewhere; `witness` is used only on failure.
    pub fn record(&mut self, case: impl Into<String>, ok: bool, witness: impl Into<String>) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(Failure { case: case.into(), witness: witness.into(), lhs: None, rhs: None });
        }
    }

    /// A case whose evaluation raised an error counts as a failure.
    pub fn error(&mut self, case: impl Into<String>, err: &Error) {
        self.record(case, false, format!("error: {err}"));
    }

    /// Fold a fallible comparison into the report.
    pub fn compare_result(&mut self, case: impl Into<String>, sides: crate::Result<(LinearOperator, LinearOperator)>) {
        match sides {
            Ok((l, r)) => self.compare(case, l, r),
            Err(e) => self.error(case, &e),
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.cases += other.cases;
        self.passed += other.passed;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({}/{} cases)", self.name, self.passed, self.cases)?;
        for fail in &self.failures {
            write!(f, "\n  case {}: witness {}", fail.case, fail.witness)?;
        }
        Ok(())
    }
}
