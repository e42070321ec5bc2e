use thiserror::Error;

use crate::treedepth::Violation;

/// Failure while reading a `.gr` / `.td` file or a gadget spec.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("boundary sizes differ ({left} vs {right})")]
    BoundaryMismatch { left: usize, right: usize },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("boundary vertex {0} listed twice")]
    DuplicateBoundary(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// Precondition failures reported by the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(#[from] Violation),
    #[error("decomposition depth {depth} exceeds the supported limit {limit}")]
    DepthTooLarge { depth: usize, limit: usize },
    #[error("instance too large for exhaustive search: n = {n} > {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("solvers disagree: {0}")]
    Disagreement(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("universe mismatch ({left:#x} vs {right:#x})")]
    UniverseMismatch { left: u64, right: u64 },
    #[error("position {0} is not in the table universe")]
    NotInUniverse(u32),
    #[error("offset {offset} at subset {subset:#x} exceeds bound {bound}")]
    OffsetBound {
        subset: u64,
        offset: u32,
        bound: u32,
    },
    #[error("value at subset {0:#x} is below the value at the empty set")]
    BelowBase(u64),
    #[error("table is not superset-monotone at subset {0:#x}")]
    NotMonotone(u64),
    #[error("universe of {0} positions is too large for a dense table")]
    UniverseTooLarge(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("boundary size {0} is not divisible by 3")]
    NotDivisibleByThree(usize),
    #[error("spec does not cover 1..={s} exactly once")]
    NotAPartition { s: usize },
    #[error("spec blocks must have size {expected}")]
    WrongBlockSize { expected: usize },
    #[error("spec {0} is not a member of the family")]
    NotInFamily(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
