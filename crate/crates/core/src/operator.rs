//! Exact matrices between labelled bases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{structural, Result};
use crate::series::{Rational, YPoly};

/// A column of an operator: basis label of the codomain -> coefficient.
pub type Column = BTreeMap<String, YPoly>;

/// Matrix of a linear map over `Q[y]`, rows and columns carrying basis
/// labels. `entries[r][c]` is the coefficient of row basis vector `r` in the
/// image of column basis vector `c`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearOperator {
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Vec<YPoly>>,
}

impl LinearOperator {
    /// Build from images of the column basis. With `rows = None` the row
    /// basis is the sorted set of labels that occur with a nonzero
    /// coefficient.
    pub fn from_columns(rows: Option<Vec<String>>, columns: Vec<(String, Column)>) -> Result<Self> {
        let rows = match rows {
            Some(r) => r,
            None => {
                let set: BTreeSet<&String> =
                    columns.iter().flat_map(|(_, c)| c.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| k)).collect();
                set.into_iter().cloned().collect()
            }
        };
        let index: BTreeMap<&str, usize> = rows.iter().enumerate().map(|(i, r)| (r.as_str(), i)).collect();
        let mut entries = vec![vec![YPoly::zero(); columns.len()]; rows.len()];
        for (c, (_, col)) in columns.iter().enumerate() {
            for (label, v) in col {
                if v.is_zero() {
                    continue;
                }
                let r = *index
                    .get(label.as_str())
                    .ok_or_else(|| structural(format!("row `{label}` is not in the row basis")))?;
                entries[r][c] = v.clone();
            }
        }
        let cols = columns.into_iter().map(|(l, _)| l).collect();
        Ok(LinearOperator { rows, cols, entries })
    }

    pub fn identity(labels: &[String]) -> Self {
        let n = labels.len();
        let entries =
            (0..n).map(|r| (0..n).map(|c| if r == c { YPoly::one() } else { YPoly::zero() }).collect()).collect();
        LinearOperator { rows: labels.to_vec(), cols: labels.to_vec(), entries }
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &YPoly {
        &self.entries[r][c]
    }

    pub fn column(&self, c: usize) -> Column {
        self.rows
            .iter()
            .enumerate()
            .filter(|(r, _)| !self.entries[*r][c].is_zero())
            .map(|(r, l)| (l.clone(), self.entries[r][c].clone()))
            .collect()
    }

    fn column_by_label(&self, label: &str) -> Option<Column> {
        self.cols.iter().position(|c| c == label).map(|c| self.column(c))
    }

    /// `self ∘ rhs`. Every row label of `rhs` must be a column label of `self`.
    pub fn compose(&self, rhs: &LinearOperator) -> Result<LinearOperator> {
        let col_index: BTreeMap<&str, usize> = self.cols.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
        let mut entries = vec![vec![YPoly::zero(); rhs.cols.len()]; self.rows.len()];
        for (k, label) in rhs.rows.iter().enumerate() {
            let mid = *col_index
                .get(label.as_str())
                .ok_or_else(|| structural(format!("cannot compose: `{label}` is not a column")))?;
            for c in 0..rhs.cols.len() {
                let b = &rhs.entries[k][c];
                if b.is_zero() {
                    continue;
                }
                for (r, row) in entries.iter_mut().enumerate() {
                    let a = &self.entries[r][mid];
                    if !a.is_zero() {
                        row[c].add_assign_ref(&(a * b));
                    }
                }
            }
        }
        Ok(LinearOperator { rows: self.rows.clone(), cols: rhs.cols.clone(), entries })
    }

    /// Entrywise sum; both operators must share row and column bases.
    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(structural("operators over different bases"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(LinearOperator { rows: self.rows.clone(), cols: self.cols.clone(), entries })
    }

    pub fn scale(&self, c: i64) -> LinearOperator {
        let c = Rational::from(c);
        let entries = self.entries.iter().map(|row| row.iter().map(|x| x.scale(&c)).collect()).collect();
        LinearOperator { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn eval_y(&self, y: &Rational) -> LinearOperator {
        let entries = self.entries.iter().map(|row| row.iter().map(|x| YPoly::constant(x.eval(y))).collect()).collect();
        LinearOperator { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    /// First column (in column order) on which the two operators differ,
    /// compared as label-indexed vectors, so row bases may differ by zero
    /// rows. Column bases must agree.
    pub fn first_difference(&self, other: &LinearOperator) -> Option<String> {
        if self.cols != other.cols {
            return Some(self.cols.first().or(other.cols.first()).cloned().unwrap_or_default());
        }
        self.cols.iter().find(|label| self.column_by_label(label) != other.column_by_label(label)).cloned()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(r, row)| row.iter().enumerate().all(|(c, x)| if r == c { x.is_one() } else { x.is_zero() }))
    }
}

impl fmt::Display for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.entries.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
        let label_w = self.rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols.len())
            .map(|c| cells.iter().map(|row| row[c].len()).chain([self.cols[c].len()]).max().unwrap_or(0))
            .collect();
        write!(f, "{:label_w$} |", "")?;
        for (c, w) in self.cols.iter().zip(&widths) {
            write!(f, " {c:>w$}")?;
        }
        for (r, row) in cells.iter().enumerate() {
            write!(f, "\n{:label_w$} |", self.rows[r])?;
            for (x, w) in row.iter().zip(&widths) {
                write!(f, " {x:>w$}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(pairs: &[(&str, i64)]) -> Column {
        pairs.iter().map(|(l, v)| (l.to_string(), YPoly::from_int(*v))).collect()
    }

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn compose_matches_hand_product() {
        // a = [[1,2],[0,1]], b = [[3],[4]]
        let a = LinearOperator::from_columns(
            Some(labels(&["u", "v"])),
            vec![("u".into(), col(&[("u", 1)])), ("v".into(), col(&[("u", 2), ("v", 1)]))],
        )
        .unwrap();
        let b = LinearOperator::from_columns(Some(labels(&["u", "v"])), vec![("w".into(), col(&[("u", 3), ("v", 4)]))])
            .unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.column(0), col(&[("u", 11), ("v", 4)]));
        assert!(b.compose(&a).is_err());
    }

    #[test]
    fn identity_and_difference() {
        let id = LinearOperator::identity(&labels(&["1", "h"]));
        assert!(id.is_identity());
        assert_eq!(id.compose(&id).unwrap(), id);
        let twice = id.add(&id).unwrap();
        assert_eq!(twice, id.scale(2));
        assert_eq!(id.first_difference(&twice), Some("1".to_string()));
        assert_eq!(id.first_difference(&id), None);
    }

    #[test]
    fn implicit_rows_drop_zeros() {
        let op = LinearOperator::from_columns(None, vec![("a".into(), col(&[("z", 0), ("b", 2)]))]).unwrap();
        assert_eq!(op.rows(), &["b".to_string()]);
    }
}
