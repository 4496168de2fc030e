use thiserror::Error;

/// Errors raised by the matrix, graph and instance operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has no nonzero entry")]
    ZeroMatrix,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph contains a directed cycle")]
    Cyclic,
    #[error("not a permutation of [{0}]")]
    NotPermutation(usize),
    #[error("vertex sequence {0:?} is not a path of the graph")]
    NotAPath(Vec<usize>),
    #[error("graph is not in topological ordering")]
    NotTopological,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("diagonal entry d_{index} = {value} is not positive")]
    NonPositiveDiagonal { index: usize, value: String },
    #[error("diagonal is not constant")]
    NonConstantDiagonal,
    #[error("c = r = {0}: diagonal deletions are handled by the direct submatrix")]
    DiagonalDeletion(usize),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("not a bipartite DAG for the given parts: {0}")]
    NotBipartite(String),
    #[error("determinant {det} exceeds the enumeration cap {cap}")]
    TooLarge { det: String, cap: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
