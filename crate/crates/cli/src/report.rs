//! Run reports: JSON via serde, plus a plain text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use corrclass_core::check::{CheckReport, Failure};
use corrclass_core::operator::LinearOperator;

pub const SCHEMA_VERSION: u32 = 1;

/// Operator matrix with labelled bases; entries are printed polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl From<&LinearOperator> for Matrix {
    fn from(op: &LinearOperator) -> Self {
        let entries =
            (0..op.rows().len()).map(|r| (0..op.cols().len()).map(|c| op.entry(r, c).to_string()).collect()).collect();
        Matrix { rows: op.rows().to_vec(), cols: op.cols().to_vec(), entries }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureReport {
    pub check: String,
    pub case: String,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Matrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Matrix>,
}

impl FailureReport {
    pub fn new(check: &str, f: &Failure) -> Self {
        FailureReport {
            check: check.to_string(),
            case: f.case.clone(),
            witness: f.witness.clone(),
            lhs: f.lhs.as_ref().map(Matrix::from),
            rhs: f.rhs.as_ref().map(Matrix::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub cases: usize,
    pub passes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ValueReport {
    Operator { functor: String, matrix: Matrix },
    Bicycle { bicycle: String },
    Class { class: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectiveReport {
    pub index: usize,
    pub line: usize,
    pub directive: String,
    /// Check family (`functoriality`, `corr-suite`, ...) or `eval`/`show`.
    pub suite: String,
    pub cases: usize,
    pub passes: usize,
    pub failures: Vec<FailureReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueReport>,
}

impl DirectiveReport {
    pub fn new(index: usize, line: usize, directive: String, suite: impl Into<String>) -> Self {
        DirectiveReport {
            index,
            line,
            directive,
            suite: suite.into(),
            cases: 0,
            passes: 0,
            failures: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            value: None,
        }
    }

    pub fn absorb(&mut self, r: &CheckReport) {
        self.cases += r.cases;
        self.passes += r.passed;
        self.failures.extend(r.failures.iter().map(|f| FailureReport::new(&r.name, f)));
        self.checks.push(CheckSummary { name: r.name.clone(), cases: r.cases, passes: r.passed });
    }

    /// A directive that could not be carried out counts as one failed case.
    pub fn precondition_failure(&mut self, msg: String) {
        self.cases += 1;
        self.failures.push(FailureReport {
            check: self.suite.clone(),
            case: self.directive.clone(),
            witness: format!("error: {msg}"),
            lhs: None,
            rhs: None,
        });
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub seed: u64,
    pub ok: bool,
    pub cases: usize,
    pub failures: usize,
    pub directives: Vec<DirectiveReport>,
}

impl Report {
    pub fn new(seed: u64, directives: Vec<DirectiveReport>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            seed,
            ok: directives.iter().all(DirectiveReport::ok),
            cases: directives.iter().map(|d| d.cases).sum(),
            failures: directives.iter().map(|d| d.failures.len()).sum(),
            directives,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.directives {
            match &d.value {
                Some(ValueReport::Operator { functor, matrix }) => {
                    let _ = writeln!(out, "{:>4}  {}  [{functor}]", d.line, d.directive);
                    out.push_str(&render_matrix(matrix));
                }
                Some(ValueReport::Bicycle { bicycle: v } | ValueReport::Class { class: v }) => {
                    let _ = writeln!(out, "{:>4}  {}  = {v}", d.line, d.directive);
                }
                None => {
                    let status = if d.ok() { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "{:>4}  {status} {} ({}/{})", d.line, d.directive, d.passes, d.cases);
                }
            }
            if d.checks.len() > 1 {
                for c in &d.checks {
                    let _ = writeln!(out, "        {} ({}/{})", c.name, c.passes, c.cases);
                }
            }
            for f in &d.failures {
                let _ = writeln!(out, "        {}: case {}: witness {}", f.check, f.case, f.witness);
            }
            for n in &d.notes {
                let _ = writeln!(out, "        note: {n}");
            }
        }
        let status = if self.ok { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status}: {} directives, {} cases, {} failures (seed {})",
            self.directives.len(),
            self.cases,
            self.failures,
            self.seed
        );
        out
    }
}

fn render_matrix(m: &Matrix) -> String {
    let label_w = m.rows.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..m.cols.len())
        .map(|c| m.entries.iter().map(|row| row[c].len()).chain([m.cols[c].len()]).max().unwrap_or(0))
        .collect();
    let mut out = format!("        {:label_w$} |", "");
    for (c, w) in m.cols.iter().zip(&widths) {
        let _ = write!(out, " {c:>w$}");
    }
    out.push('\n');
    for (r, row) in m.entries.iter().enumerate() {
        let _ = write!(out, "        {:label_w$} |", m.rows[r]);
        for (x, w) in row.iter().zip(&widths) {
            let _ = write!(out, " {x:>w$}");
        }
        out.push('\n');
    }
    out
}
