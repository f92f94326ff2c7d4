use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line has all coefficients zero")]
    ZeroLine,
    #[error("lines {0} and {1} are identical")]
    IdenticalLines(usize, usize),
    #[error("line {0} repeats line {1}; arrangements must be reduced")]
    RepeatedLine(usize, usize),
    #[error("an arrangement needs at least one line")]
    EmptyArrangement,
    #[error("line index {index} out of range for {d} lines")]
    BadIndex { index: usize, d: usize },
    #[error("invalid incidence structure: {0}")]
    InvalidIncidence(String),
    #[error("counting identity violated: sum n_k C(k,2) = {got}, C(d,2) = {expected}")]
    CountingIdentityViolation { got: u64, expected: u64 },
    #[error("no Jacobian relation of degree <= {0}; input is not a reduced arrangement")]
    NoRelationFound(u32),
    #[error("Hilbert function of S/J_f not stable: {0} at degree {1} vs {2} at degree {3}")]
    NotStabilized(usize, i64, usize, i64),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("applicable multiarrangement exponent cases disagree: {0}")]
    CaseConflict(String),
    #[error("inconsistent deletion-restriction facts: {0}")]
    Inconsistent(String),
    #[error("characteristic polynomial t^2 - {b1} t + {b2} has no decomposition (t-a)(t-b)+1 with integers a <= b")]
    NoIntegerDecomposition { b1: i64, b2: i64 },
    #[error("line-type table inconsistent with d = {d}: {reason}")]
    InconsistentTable { d: usize, reason: String },
    #[error("variable `{0}` has no finite upper bound")]
    Unbounded(String),
    #[error("unknown system name `{0}`")]
    UnknownName(String),
    #[error("expected 13 lines, got {0}")]
    NotThirteen(usize),
    #[error("expected 14 lines, got {0}")]
    NotFourteen(usize),
    #[error("expected at most 12 lines, got {0}")]
    TooManyLines(usize),
    #[error("no branch hypothesis could be verified: {0}")]
    BranchHypothesisUnverifiable(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}
