use thiserror::Error;

/// Errors raised by graph construction and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for a graph with {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("invalid graph input: {0}")]
    InvalidInput(String),
    #[error("edges do not compose into a path: {0}")]
    NotAPath(String),
    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a permutation of 0..{len}: {detail}")]
    InvalidPermutation { len: usize, detail: String },
    #[error("invalid submatrix selector: {0}")]
    InvalidSelector(String),
    #[error("vertex `{0}` is a sink; the stochastic normalization needs positive outdegrees")]
    HasSink(String),

    #[error("vertex set is not hereditary and saturated: {0}")]
    NotHereditarySaturated(String),
    #[error("vertex set is not in the hereditary saturated lattice: {0}")]
    NotInLattice(String),

    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("graph is not aperiodic")]
    NotAperiodic,

    #[error("index list {0:?} repeats an index")]
    DuplicateIndex(Vec<usize>),
    #[error("empty vertex subset")]
    EmptySubset,

    #[error("vertex `{0}` is a sink and cannot be expanded")]
    SinkCannotExpand(String),
    #[error("generator {vertex}({shift}) does not occur in the element")]
    GeneratorAbsent { vertex: String, shift: i64 },
    #[error("generator {vertex}({shift}) lies above the target level {level}")]
    AboveLevel { vertex: String, shift: i64, level: i64 },

    #[error("{what}: size {size} exceeds the cap {cap}")]
    TooLarge { what: &'static str, size: u128, cap: u128 },
}

impl Error {
    /// Coarse classification used by front ends to pick exit codes.
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            UnknownVertex(_) | DuplicateVertex(_) | DuplicateEdge(_) | InvalidInput(_) => {
                ErrorKind::Input
            }
            TooLarge { .. } => ErrorKind::Cap,
            _ => ErrorKind::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Precondition,
    Cap,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
