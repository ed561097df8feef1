use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("row {row} is empty")]
    EmptyRow { row: usize },
    #[error("row {row} lists column {col} twice")]
    DuplicateEntry { row: usize, col: usize },
    #[error("row {row} references column {col}, but the code length is {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("word length {found} does not match code length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("no ({var_degree},{check_degree})-regular matrix with n = {n}")]
    IrregularDimensions {
        n: usize,
        var_degree: usize,
        check_degree: usize,
    },
    #[error("random construction did not find a valid matrix")]
    ConstructionFailed,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecodeError {
    #[error("soft-min of an empty set")]
    EmptyInput,
    #[error("inverse temperature must be finite and positive, got {0}")]
    InvalidTemperature(f64),
    #[error("edge ({var}, {check}) is not in the Tanner graph")]
    EdgeNotPresent { var: usize, check: usize },
    #[error("check {check} has degree {degree}; extrinsic messages need degree at least 2")]
    DegenerateCheck { check: usize, degree: usize },
    #[error("this operation needs a finite inverse temperature")]
    NeedsFiniteTemperature,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("llr vector has length {found}, code length is {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("code dimension {k} exceeds the enumeration limit {limit}")]
    DimensionTooLarge { k: usize, limit: usize },
    #[error("instance too large for the LP oracle: n = {n}, {constraints} constraints")]
    InstanceTooLarge { n: usize, constraints: usize },
    #[error("local code degree {0} exceeds the enumeration limit")]
    DegreeTooLarge(usize),
    #[error("parameter a must lie in (0, 1)")]
    ParameterOutOfRange,
    #[error("invalid grid: lo must be below hi and the step positive")]
    InvalidGrid,
    #[error("LP solution failed verification: {0}")]
    Unverified(&'static str),
}
