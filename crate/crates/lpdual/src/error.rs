use std::path::PathBuf;

use lpdual_core::{CodeError, DecodeError, OracleError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlistErrorKind {
    #[error("not a nonnegative integer: {0:?}")]
    NotANumber(String),
    #[error("file ends before the {0}")]
    Truncated(&'static str),
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("out-of-range index {index} (valid range 1..={bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("index {0} listed twice")]
    Duplicate(usize),
    #[error("column {col} and row {row} disagree about their shared entry")]
    Disagreement { col: usize, row: usize },
    #[error("matrix has no rows or no columns")]
    EmptyMatrix,
    #[error("row of weight zero")]
    EmptyRow,
    #[error("{0}")]
    Invalid(CodeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct AlistError {
    pub line: usize,
    pub kind: AlistErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Alist { path: PathBuf, source: AlistError },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Config(String),
}
