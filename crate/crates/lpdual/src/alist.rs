//! The alist interchange format for sparse parity-check matrices.
//!
//! Layout, one item per line: `n m`, the maximum column and row weights,
//! the `n` column weights, the `m` row weights, then `n` lines listing the
//! 1-based rows of each column and `m` lines listing the 1-based columns of
//! each row. Short lines may be padded with zeros. Blank lines are skipped.

use std::fmt::Write as _;

use lpdual_core::ParityCheckMatrix;

use crate::error::{AlistError, AlistErrorKind};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next nonblank line as integers, with its 1-based line number.
    fn next_numbers(&mut self, what: &'static str) -> Result<(usize, Vec<usize>), AlistError> {
        for (idx, line) in self.inner.by_ref() {
            self.last = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut out = Vec::new();
            for tok in line.split_whitespace() {
                let v = tok.parse::<usize>().map_err(|_| AlistError {
                    line: idx + 1,
                    kind: AlistErrorKind::NotANumber(tok.to_string()),
                })?;
                out.push(v);
            }
            return Ok((idx + 1, out));
        }
        Err(AlistError {
            line: self.last + 1,
            kind: AlistErrorKind::Truncated(what),
        })
    }

    fn expect_count(&mut self, what: &'static str, count: usize) -> Result<(usize, Vec<usize>), AlistError> {
        let (line, v) = self.next_numbers(what)?;
        if v.len() != count {
            return Err(AlistError {
                line,
                kind: AlistErrorKind::DimensionMismatch {
                    what,
                    expected: count,
                    found: v.len(),
                },
            });
        }
        Ok((line, v))
    }
}

/// Reads a neighbor list, dropping zero padding and converting to 0-based.
fn neighbor_list(
    line: usize,
    raw: &[usize],
    weight: usize,
    bound: usize,
) -> Result<Vec<usize>, AlistError> {
    let err = |kind| AlistError { line, kind };
    let entries: Vec<usize> = raw.iter().copied().filter(|&v| v != 0).collect();
    if entries.len() != weight {
        return Err(err(AlistErrorKind::DimensionMismatch {
            what: "neighbor list length",
            expected: weight,
            found: entries.len(),
        }));
    }
    let mut seen = vec![false; bound];
    let mut out = Vec::with_capacity(weight);
    for v in entries {
        if v > bound {
            return Err(err(AlistErrorKind::IndexOutOfRange { index: v, bound }));
        }
        if std::mem::replace(&mut seen[v - 1], true) {
            return Err(err(AlistErrorKind::Duplicate(v)));
        }
        out.push(v - 1);
    }
    Ok(out)
}

pub fn parse_alist(text: &str) -> Result<ParityCheckMatrix, AlistError> {
    let mut lines = Lines::new(text);
    let (_, dims) = lines.expect_count("header `n m`", 2)?;
    let (n, m) = (dims[0], dims[1]);
    if n == 0 || m == 0 {
        return Err(AlistError {
            line: 1,
            kind: AlistErrorKind::EmptyMatrix,
        });
    }
    let (max_line, max) = lines.expect_count("maximum weights", 2)?;
    let (_, col_w) = lines.expect_count("column weights", n)?;
    let (_, row_w) = lines.expect_count("row weights", m)?;
    let check_max = |line, weights: &[usize], limit| {
        if let Some(&w) = weights.iter().find(|&&w| w > limit) {
            return Err(AlistError {
                line,
                kind: AlistErrorKind::DimensionMismatch {
                    what: "weight above the declared maximum",
                    expected: limit,
                    found: w,
                },
            });
        }
        Ok(())
    };
    check_max(max_line, &col_w, max[0])?;
    check_max(max_line, &row_w, max[1])?;

    let mut cols = Vec::with_capacity(n);
    for &w in &col_w {
        let (line, raw) = lines.next_numbers("column neighbor lists")?;
        cols.push(neighbor_list(line, &raw, w, m)?);
    }
    let mut rows = Vec::with_capacity(m);
    let mut row_lines = Vec::with_capacity(m);
    for &w in &row_w {
        let (line, raw) = lines.next_numbers("row neighbor lists")?;
        if w == 0 {
            return Err(AlistError {
                line,
                kind: AlistErrorKind::EmptyRow,
            });
        }
        rows.push(neighbor_list(line, &raw, w, n)?);
        row_lines.push(line);
    }

    // The column lists must be the exact transpose of the row lists.
    let mut transpose = vec![Vec::new(); n];
    for (j, row) in rows.iter().enumerate() {
        for &i in row {
            transpose[i].push(j);
        }
    }
    for (i, (listed, derived)) in cols.iter_mut().zip(&transpose).enumerate() {
        listed.sort_unstable();
        if listed != derived {
            let j = listed
                .iter()
                .find(|j| !derived.contains(j))
                .or_else(|| derived.iter().find(|j| !listed.contains(j)))
                .copied()
                .unwrap_or(0);
            return Err(AlistError {
                line: row_lines[j],
                kind: AlistErrorKind::Disagreement { col: i + 1, row: j + 1 },
            });
        }
    }
    ParityCheckMatrix::from_rows(n, &rows).map_err(|e| AlistError {
        line: 1,
        kind: AlistErrorKind::Invalid(e),
    })
}

pub fn serialize_alist(h: &ParityCheckMatrix) -> String {
    let rows = h.rows();
    let cols = h.cols();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "{} {}", h.n(), h.m());
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(&mut cols.iter().map(Vec::len)));
    let _ = writeln!(out, "{}", join(&mut rows.iter().map(Vec::len)));
    for list in cols.iter().chain(&rows) {
        if list.is_empty() {
            // A lone zero pad keeps the line from reading as blank.
            out.push_str("0\n");
        } else {
            let _ = writeln!(out, "{}", join(&mut list.iter().map(|&v| v + 1)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row() {
        let h = parse_alist("3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 3\n").unwrap();
        assert_eq!((h.n(), h.m()), (3, 1));
        assert_eq!(h.check_vars(0), &[0, 1, 2]);
    }

    #[test]
    fn unused_column_round_trips() {
        let h = ParityCheckMatrix::from_rows(3, &[vec![0, 2]]).unwrap();
        let text = serialize_alist(&h);
        assert_eq!(parse_alist(&text).unwrap().rows(), h.rows());
    }

    #[test]
    fn zero_padding_is_ignored() {
        let h = parse_alist("3 2\n2 3\n2 1 1\n3 1\n1 2\n1 0\n1 0\n1 2 3\n1\n").unwrap();
        assert_eq!(h.rows(), vec![vec![0, 1, 2], vec![0]]);
    }

    #[test]
    fn out_of_range_row_is_reported_with_line() {
        let err = parse_alist("3 1\n1 3\n1 1 1\n3\n5\n1\n1\n1 2 3\n").unwrap_err();
        assert_eq!(err.line, 5);
        assert!(matches!(err.kind, AlistErrorKind::IndexOutOfRange { index: 5, bound: 1 }));
        assert!(err.to_string().contains("out-of-range index"));
    }

    #[test]
    fn truncated_file() {
        let err = parse_alist("3 1\n1 3\n1 1 1\n3\n1\n1\n").unwrap_err();
        assert!(matches!(err.kind, AlistErrorKind::Truncated(_)));
        assert_eq!(err.line, 7);
    }

    #[test]
    fn duplicates_are_rejected() {
        let err = parse_alist("3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 2\n").unwrap_err();
        assert_eq!(err.line, 8);
        assert!(matches!(err.kind, AlistErrorKind::Duplicate(2)));
    }

    #[test]
    fn column_row_disagreement() {
        // Column 1 lists only row 1, but row 2 names it as well.
        let err = parse_alist("3 2\n1 3\n1 1 1\n3 1\n1\n1\n2\n1 2 3\n1\n").unwrap_err();
        assert!(matches!(err.kind, AlistErrorKind::Disagreement { .. }));
    }

    #[test]
    fn weight_mismatch() {
        let err = parse_alist("3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2\n").unwrap_err();
        assert_eq!(err.line, 8);
        assert!(matches!(err.kind, AlistErrorKind::DimensionMismatch { .. }));
    }

    #[test]
    fn garbage_token() {
        let err = parse_alist("3 x\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(matches!(err.kind, AlistErrorKind::NotANumber(_)));
    }
}
