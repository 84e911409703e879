//! Latin squares `L(i, j) = a_i⁻¹·a_j` and their completeness certificates.
//!
//! Every check is an exact tally: for an offset `m`, count each ordered
//! pair `(x, y)` with `y` sitting `m` cells after `x` in some row (or
//! column). A failed check reports the offending pair and two or three
//! occurrences, which [`Witness::holds_in`] re-reads from the cells.
//!
//! Output formats are byte-exact: CSV is UTF-8, one row per line, comma
//! separated, LF terminated, with no trailing separator (fields containing
//! commas or quotes are quoted). JSON is `{"order", "group", "arrangement",
//! "cells"}` with `cells` a list of rows.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::Group;

#[derive(Debug, Error)]
pub enum LatinError {
    #[error("square is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    Ragged { row: usize, len: usize, n: usize },
    #[error("symbol {symbol} at ({row}, {col}) is out of range for order {n}")]
    SymbolOutOfRange { row: usize, col: usize, symbol: usize, n: usize },
    #[error("symbol {symbol} repeats in {axis} {line}")]
    NotLatin { axis: Axis, line: usize, symbol: usize },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Column,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Column => "column",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<u16>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arrangement: Option<Vec<usize>>,
}

/// The square with `(i, j)` entry `a_i⁻¹·a_j`.
pub fn square_from(g: &Group, a: &[usize]) -> LatinSquare {
    let n = a.len();
    let mut cells = Vec::with_capacity(n * n);
    for &x in a {
        let xi = g.inv(x);
        cells.extend(a.iter().map(|&y| g.mul(xi, y) as u16));
    }
    LatinSquare { order: n, cells, group: Some(g.spec().to_string()), arrangement: Some(a.to_vec()) }
}

impl LatinSquare {
    /// Validates a square given as rows of symbols `0..n`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, LatinError> {
        let n = rows.len();
        if n == 0 {
            return Err(LatinError::Empty);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LatinError::Ragged { row, len: r.len(), n });
            }
            for (col, &symbol) in r.iter().enumerate() {
                if symbol >= n {
                    return Err(LatinError::SymbolOutOfRange { row, col, symbol, n });
                }
                cells.push(symbol as u16);
            }
        }
        let sq = Self { order: n, cells, group: None, arrangement: None };
        sq.check_latin()?;
        Ok(sq)
    }

    fn check_latin(&self) -> Result<(), LatinError> {
        let n = self.order;
        for axis in [Axis::Row, Axis::Column] {
            for line in 0..n {
                let mut seen = vec![false; n];
                for k in 0..n {
                    let s = self.line_cell(axis, line, k);
                    if std::mem::replace(&mut seen[s], true) {
                        return Err(LatinError::NotLatin { axis, line, symbol: s });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn cell(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.order + j] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(|r| r.iter().map(|&s| s as usize).collect()).collect()
    }

    pub fn group(&self) -> Option<&str> {
        self.group.as_deref()
    }

    pub fn arrangement(&self) -> Option<&[usize]> {
        self.arrangement.as_deref()
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut cells = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[j * n + i] = self.cells[i * n + j];
            }
        }
        Self { order: n, cells, group: self.group.clone(), arrangement: None }
    }

    #[inline]
    fn line_cell(&self, axis: Axis, line: usize, k: usize) -> usize {
        match axis {
            Axis::Row => self.cell(line, k),
            Axis::Column => self.cell(k, line),
        }
    }

    /// First ordered pair occurring more than `limit` times at offset `m`
    /// (unordered when `ordered` is false) along `axis`.
    fn offset_violation(&self, axis: Axis, m: usize, limit: usize, ordered: bool) -> Option<Witness> {
        let n = self.order;
        let mut tally = vec![0u32; n * n];
        for line in 0..n {
            for k in 0..n.saturating_sub(m) {
                let (x, y) = (self.line_cell(axis, line, k), self.line_cell(axis, line, k + m));
                let key = if ordered || x < y { x * n + y } else { y * n + x };
                tally[key] += 1;
                if tally[key] as usize > limit {
                    return Some(self.collect_witness(axis, m, key / n, key % n, ordered, limit + 1));
                }
            }
        }
        None
    }

    fn collect_witness(&self, axis: Axis, m: usize, x: usize, y: usize, ordered: bool, count: usize) -> Witness {
        let n = self.order;
        let mut positions = Vec::with_capacity(count);
        'outer: for line in 0..n {
            for k in 0..n - m {
                let (p, q) = (self.line_cell(axis, line, k), self.line_cell(axis, line, k + m));
                if (p, q) == (x, y) || (!ordered && (q, p) == (x, y)) {
                    positions.push((line, k));
                    if positions.len() == count {
                        break 'outer;
                    }
                }
            }
        }
        Witness { axis, offset: m, pair: (x, y), ordered, positions }
    }

    pub fn row_complete_witness(&self) -> Option<Witness> {
        self.offset_violation(Axis::Row, 1, 1, true)
    }

    pub fn is_row_complete(&self) -> bool {
        self.row_complete_witness().is_none()
    }

    pub fn is_complete(&self) -> bool {
        self.is_row_complete() && self.offset_violation(Axis::Column, 1, 1, true).is_none()
    }

    pub fn is_row_quasi_complete(&self) -> bool {
        self.offset_violation(Axis::Row, 1, 2, false).is_none()
    }

    pub fn is_quasi_complete(&self) -> bool {
        self.is_row_quasi_complete() && self.offset_violation(Axis::Column, 1, 2, false).is_none()
    }

    /// Whether every offset `1..=k` along rows repeats no ordered pair.
    pub fn is_roman(&self, k: usize) -> bool {
        (1..=k).all(|m| self.offset_violation(Axis::Row, m, 1, true).is_none())
    }

    pub fn is_k_complete(&self, k: usize) -> bool {
        (1..=k).all(|m| {
            self.offset_violation(Axis::Row, m, 1, true).is_none()
                && self.offset_violation(Axis::Column, m, 1, true).is_none()
        })
    }

    /// Largest `k` for which the square is Roman-`k`; 0 when not even
    /// row-complete.
    pub fn roman_k_max(&self) -> usize {
        (1..self.order).take_while(|&m| self.offset_violation(Axis::Row, m, 1, true).is_none()).count()
    }

    pub fn k_complete_max(&self) -> usize {
        (1..self.order)
            .take_while(|&m| {
                self.offset_violation(Axis::Row, m, 1, true).is_none()
                    && self.offset_violation(Axis::Column, m, 1, true).is_none()
            })
            .count()
    }

    pub fn is_vatican(&self) -> bool {
        self.roman_k_max() == self.order - 1
    }

    pub fn certificate(&self) -> SquareCertificate {
        let n = self.order;
        let mut failures = Vec::new();
        let mut record = |check: Check, w: Option<Witness>| {
            let ok = w.is_none();
            if let Some(witness) = w {
                failures.push(Failure { check, witness });
            }
            ok
        };
        let rows_ok = record(Check::RowComplete, self.offset_violation(Axis::Row, 1, 1, true));
        let cols_ok = record(Check::ColumnComplete, self.offset_violation(Axis::Column, 1, 1, true));
        let rows_q = record(Check::RowQuasiComplete, self.offset_violation(Axis::Row, 1, 2, false));
        let cols_q = record(Check::ColumnQuasiComplete, self.offset_violation(Axis::Column, 1, 2, false));

        let mut roman = 0;
        let mut k_complete = 0;
        let mut cols_alive = cols_ok;
        for m in 1..n {
            if let Some(w) = self.offset_violation(Axis::Row, m, 1, true) {
                if m > 1 {
                    failures.push(Failure { check: Check::Roman, witness: w });
                }
                break;
            }
            roman = m;
            if cols_alive {
                match self.offset_violation(Axis::Column, m, 1, true) {
                    None => k_complete = m,
                    Some(w) => {
                        if m > 1 {
                            failures.push(Failure { check: Check::KComplete, witness: w });
                        }
                        cols_alive = false;
                    }
                }
            }
        }
        SquareCertificate {
            order: n,
            row_complete: rows_ok,
            complete: rows_ok && cols_ok,
            row_quasi_complete: rows_q,
            quasi_complete: rows_q && cols_q,
            roman_k_max: roman,
            k_complete_max: k_complete,
            vatican: roman == n - 1,
            failures,
        }
    }

    /// CSV with element ids, or with group words when `g` is given.
    pub fn write_csv<W: std::io::Write>(&self, out: W, g: Option<&Group>) -> Result<(), LatinError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        for row in self.cells.chunks(self.order) {
            match g {
                Some(g) => w.write_record(row.iter().map(|&s| g.word(s as usize)))?,
                None => w.write_record(row.iter().map(|s| s.to_string()))?,
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self, g: Option<&Group>) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, g).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "group": self.group,
            "arrangement": self.arrangement,
            "cells": self.rows(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    RowComplete,
    ColumnComplete,
    RowQuasiComplete,
    ColumnQuasiComplete,
    Roman,
    KComplete,
}

/// Occurrences of one pair at one offset that break a check.
///
/// `positions` holds `(line, k)`: cells `k` and `k + offset` of that row
/// (or column) carry the pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub axis: Axis,
    pub offset: usize,
    pub pair: (usize, usize),
    pub ordered: bool,
    pub positions: Vec<(usize, usize)>,
}

impl Witness {
    /// Re-reads every listed occurrence from `sq`.
    pub fn holds_in(&self, sq: &LatinSquare) -> bool {
        let distinct = {
            let mut p = self.positions.clone();
            p.sort_unstable();
            p.dedup();
            p.len() == self.positions.len()
        };
        distinct
            && self.positions.iter().all(|&(line, k)| {
                k + self.offset < sq.order() && line < sq.order() && {
                    let (p, q) = (sq.line_cell(self.axis, line, k), sq.line_cell(self.axis, line, k + self.offset));
                    (p, q) == self.pair || (!self.ordered && (q, p) == self.pair)
                }
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: Check,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareCertificate {
    pub order: usize,
    pub row_complete: bool,
    pub complete: bool,
    pub row_quasi_complete: bool,
    pub quasi_complete: bool,
    pub roman_k_max: usize,
    pub k_complete_max: usize,
    pub vatican: bool,
    pub failures: Vec<Failure>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group_spec;
    use crate::props::{self, walecki};

    #[test]
    fn z4_cell_and_diagonal() {
        let g = parse_group_spec("Z4").unwrap();
        let sq = square_from(&g, &[0, 1, 3, 2]);
        assert_eq!(sq.cell(1, 3), 1);
        assert!((0..4).all(|i| sq.cell(i, i) == 0));
        assert_eq!(sq.rows()[0], vec![0, 1, 3, 2]);
        assert!(sq.is_vatican());
    }

    #[test]
    fn z6_complete_and_not() {
        let g = parse_group_spec("Z6").unwrap();
        let good = square_from(&g, &walecki(6));
        assert!(good.is_row_complete() && good.is_complete());
        let bad = square_from(&g, &[0, 1, 2, 3, 4, 5]);
        let w = bad.row_complete_witness().unwrap();
        assert_eq!(w.pair.1, (w.pair.0 + 1) % 6);
        assert!(w.holds_in(&bad));
        let cert = bad.certificate();
        assert!(!cert.row_complete && cert.roman_k_max == 0);
        assert!(cert.failures.iter().all(|f| f.witness.holds_in(&bad)));
    }

    #[test]
    fn order_one() {
        let sq = LatinSquare::from_rows(&[vec![0]]).unwrap();
        assert!(sq.is_row_complete() && sq.is_complete() && sq.is_vatican());
        assert_eq!(sq.roman_k_max(), 0);
    }

    #[test]
    fn e4_non_terrace_not_quasi_complete() {
        let g = parse_group_spec("E4").unwrap();
        for a in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]] {
            assert!(!props::is_terrace(&g, &a));
            assert!(!square_from(&g, &a).is_quasi_complete());
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(LatinSquare::from_rows(&[]), Err(LatinError::Empty)));
        assert!(matches!(
            LatinSquare::from_rows(&[vec![0, 1], vec![0, 1]]),
            Err(LatinError::NotLatin { axis: Axis::Column, .. })
        ));
        assert!(matches!(LatinSquare::from_rows(&[vec![0, 1], vec![1]]), Err(LatinError::Ragged { row: 1, .. })));
        assert!(matches!(LatinSquare::from_rows(&[vec![0, 2], vec![2, 0]]), Err(LatinError::SymbolOutOfRange { .. })));
    }

    #[test]
    fn csv_is_byte_exact() {
        let g = parse_group_spec("Z3").unwrap();
        let sq = square_from(&g, &[0, 1, 2]);
        assert_eq!(sq.to_csv(None), "0,1,2\n2,0,1\n1,2,0\n");
        let e = parse_group_spec("Z2xZ2").unwrap();
        let csv = square_from(&e, &[0, 1, 2, 3]).to_csv(Some(&e));
        assert!(csv.starts_with("\"(0,0)\",\"(0,1)\""));
        assert!(csv.ends_with('\n') && !csv.contains(",\n"));
    }

    #[test]
    fn json_round_trips_cells() {
        let g = parse_group_spec("D6").unwrap();
        let sq = square_from(&g, &[0, 1, 2, 3, 4, 5]);
        let v = sq.to_json();
        let rows: Vec<Vec<usize>> = serde_json::from_value(v["cells"].clone()).unwrap();
        assert_eq!(LatinSquare::from_rows(&rows).unwrap().rows(), sq.rows());
        assert_eq!(v["group"], "D6");
    }
}
