use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid projector: {0}")]
    InvalidProjector(String),

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    #[error("measurement outcome has zero probability")]
    NullEvent,

    #[error("zero vector cannot define a ray")]
    ZeroVector,

    #[error("duplicate ray: `{0}` is parallel to `{1}`")]
    DuplicateRay(String, String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph has {n} vertices, budget is {budget}")]
    BudgetExceeded { n: usize, budget: usize },

    #[error("basis {0:?} is not a clique of the graph")]
    BasisNotClique(Vec<usize>),

    #[error("{what} did not converge ({detail})")]
    NonConvergence { what: &'static str, detail: String },

    #[error("rank extraction failed: {0}")]
    RankExtraction(String),

    #[error("qubit count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("clause {clause} has non-commuting factors `{a}` and `{b}`")]
    NonCommutingClause { clause: usize, a: String, b: String },

    #[error("unregistered atom `{0}`")]
    UnregisteredAtom(String),

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
