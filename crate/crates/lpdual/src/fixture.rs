//! Frozen LP instances used as regression fixtures.
//!
//! ```text
//! seed 42
//! lp_value -4.1355346393205206e-1
//! ml_value -2.0000000000000000e-1
//! integral false
//! x 3.3333333333333337e-1 ...
//! llr -4.4940212636773724e-2 ...
//! alist
//! <alist text>
//! ```

use std::fmt::Write as _;
use std::path::Path;

use lpdual_core::{LlrVector, ParityCheckMatrix};

use crate::alist::{parse_alist, serialize_alist};
use crate::error::{Error, FormatError};
use crate::io::{exact, read_text};

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    /// Seed of the search that produced the instance.
    pub seed: u64,
    pub code: ParityCheckMatrix,
    pub llr: LlrVector,
    pub lp_value: f64,
    pub ml_value: f64,
    pub integral: bool,
    /// The LP optimum.
    pub x: Vec<f64>,
}

impl Fixture {
    /// Positions where the LP optimum is nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&i| self.x[i] > 0.0).collect()
    }

    pub fn to_text(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|&x| exact(x)).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "lp_value {}", exact(self.lp_value));
        let _ = writeln!(out, "ml_value {}", exact(self.ml_value));
        let _ = writeln!(out, "integral {}", self.integral);
        let _ = writeln!(out, "x {}", list(&self.x));
        let _ = writeln!(out, "llr {}", list(&self.llr));
        out.push_str("alist\n");
        out.push_str(&serialize_alist(&self.code));
        out
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut lines = text.lines().enumerate();
        let mut field = |name: &str| -> Result<(usize, String), FormatError> {
            let (idx, line) = lines
                .next()
                .ok_or_else(|| FormatError::new(0, format!("missing field {name}")))?;
            let rest = line
                .strip_prefix(name)
                .and_then(|r| r.strip_prefix(' ').or(r.is_empty().then_some("")))
                .ok_or_else(|| FormatError::new(idx + 1, format!("expected field {name}")))?;
            Ok((idx + 1, rest.trim().to_string()))
        };
        let number = |(line, s): (usize, String)| -> Result<f64, FormatError> {
            s.parse().map_err(|_| FormatError::new(line, format!("not a number: {s:?}")))
        };
        let numbers = |(line, s): (usize, String)| -> Result<Vec<f64>, FormatError> {
            s.split_whitespace()
                .map(|t| t.parse().map_err(|_| FormatError::new(line, format!("not a number: {t:?}"))))
                .collect()
        };
        let (seed_line, seed) = field("seed")?;
        let seed = seed
            .parse()
            .map_err(|_| FormatError::new(seed_line, "seed must be an unsigned integer"))?;
        let lp_value = number(field("lp_value")?)?;
        let ml_value = number(field("ml_value")?)?;
        let (integral_line, integral) = field("integral")?;
        let integral = integral
            .parse()
            .map_err(|_| FormatError::new(integral_line, "integral must be true or false"))?;
        let x = numbers(field("x")?)?;
        let llr = numbers(field("llr")?)?;
        let (alist_line, _) = field("alist")?;
        let body: String = text.lines().skip(alist_line).map(|l| format!("{l}\n")).collect();
        let code = parse_alist(&body).map_err(|e| FormatError::new(alist_line + e.line, e.kind.to_string()))?;
        if x.len() != code.n() || llr.len() != code.n() {
            return Err(FormatError::new(alist_line, "x and llr must have one entry per code position"));
        }
        Ok(Self {
            seed,
            code,
            llr: LlrVector::new(llr),
            lp_value,
            ml_value,
            integral,
            x,
        })
    }

    pub fn read(path: &Path) -> Result<Self, Error> {
        Self::parse(&read_text(path)?).map_err(|source| Error::Format {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Reads every `*.fixture` file of a directory, sorted by file name.
pub fn read_fixture_dir(dir: &Path) -> Result<Vec<Fixture>, Error> {
    let io = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "fixture"));
    paths.sort();
    paths.iter().map(|p| Fixture::read(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_is_exact() {
        let code = ParityCheckMatrix::from_rows(4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let f = Fixture {
            seed: 7,
            code,
            llr: LlrVector::new(vec![0.1, -1.0 / 3.0, 2.5, -7e-5]),
            lp_value: -1.0 / 3.0,
            ml_value: 0.0,
            integral: false,
            x: vec![0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0],
        };
        let back = Fixture::parse(&f.to_text()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.support(), vec![1, 2, 3]);
    }

    #[test]
    fn malformed_fields_report_lines() {
        let err = Fixture::parse("seed 1\nlp_value zero\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = Fixture::parse("seed 1\nlp_value 0\nml_value 0\nintegral maybe\n").unwrap_err();
        assert_eq!(err.line, 4);
    }
}
