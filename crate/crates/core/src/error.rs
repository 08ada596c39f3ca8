use std::path::PathBuf;

use thiserror::Error;

/// A malformed line in one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("duplicate structure constant for ({0}, {1}, {2})")]
    DuplicateConstant(usize, usize, usize),
    #[error("structure: {0}")]
    Structure(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("coefficient vector has length {found}, ring rank is {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("power iteration did not converge after {iterations} iterations (last relative change {change:e})")]
    NoConvergence { iterations: usize, change: f64 },
    #[error("dimension residual {residual:e} exceeds {limit:e}; input is not a fusion ring")]
    FpResidual { residual: f64, limit: f64 },
    #[error("invalid subring: {0}")]
    InvalidSubring(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("functor {0} is not normal")]
    NotNormal(String),
    #[error("functor is not dominant; uncovered target elements {0:?}")]
    NotDominant(Vec<usize>),
    #[error("normality witnesses disagree (definition: {definition}, unit class: {unit_class})")]
    WitnessDisagreement { definition: bool, unit_class: bool },
    #[error("down relation disagrees with the F(R(1)) power closure at target element {0}")]
    DownRelationMismatch(usize),
    #[error("image of source class {0} meets several target classes")]
    ClassStraddle(usize),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("{0:?} is not a subgroup")]
    NotSubgroup(Vec<usize>),
    #[error("{0:?} is not a normal subgroup")]
    NotNormalSubgroup(Vec<usize>),
    #[error("grading: {0}")]
    Grading(String),
    #[error("unknown ring {0:?}")]
    UnknownRing(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
