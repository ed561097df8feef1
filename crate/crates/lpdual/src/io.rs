//! Reading codes and LLR vectors from disk.

use std::fmt::Write as _;
use std::path::Path;

use lpdual_core::{LlrVector, ParityCheckMatrix};

use crate::alist::parse_alist;
use crate::error::{Error, FormatError};

pub(crate) fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_code(path: &Path) -> Result<ParityCheckMatrix, Error> {
    parse_alist(&read_text(path)?).map_err(|source| Error::Alist {
        path: path.to_path_buf(),
        source,
    })
}

/// One decimal per line; blank lines and `#` comments are skipped.
pub fn parse_llr(text: &str) -> Result<LlrVector, FormatError> {
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| FormatError::new(idx + 1, format!("not a number: {line:?}")))?;
        if !v.is_finite() {
            return Err(FormatError::new(idx + 1, "LLR must be finite"));
        }
        values.push(v);
    }
    Ok(LlrVector::new(values))
}

pub fn format_llr(llr: &[f64]) -> String {
    let mut out = String::new();
    for v in llr {
        let _ = writeln!(out, "{}", exact(*v));
    }
    out
}

pub fn read_llr(path: &Path) -> Result<LlrVector, Error> {
    parse_llr(&read_text(path)?).map_err(|source| Error::Format {
        path: path.to_path_buf(),
        source,
    })
}

/// Comma-separated LLRs, as given on the command line.
pub fn parse_llr_list(text: &str) -> Result<LlrVector, FormatError> {
    let mut values = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        let v: f64 = tok
            .parse()
            .map_err(|_| FormatError::new(1, format!("not a number: {tok:?}")))?;
        values.push(v);
    }
    Ok(LlrVector::new(values))
}

/// Decimal with 17 significant digits, enough to round-trip any `f64`.
pub fn exact(v: f64) -> String {
    format!("{v:.16e}")
}

/// Decimal with 10 significant digits.
pub fn sig10(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    if (-5..10).contains(&magnitude) {
        let decimals = (9 - magnitude).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{v:.9e}")
    }
}
