use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tightness j={j} must lie in [1, k-1] for k={k}")]
    InvalidTightness { k: usize, j: usize },

    #[error("uniformity k={0} outside supported range [2, 16]")]
    InvalidUniformity(usize),

    #[error("vertex count n={n} must exceed k={k}")]
    TooFewVertices { n: u64, k: usize },

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("epsilon {0} outside (0, 1)")]
    InvalidEpsilon(f64),

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("path of length {len} is shorter than s+2 = {min}; the part structure is undefined")]
    ShortPath { len: usize, min: usize },

    #[error("path has {got} vertices, expected (k-j)*l + j for some l")]
    MalformedPath { got: usize },

    #[error("{vertices} vertices exceed the enumeration limit of {limit}")]
    EnumerationLimit { vertices: usize, limit: usize },

    #[error("C(n,k) = {count} k-sets exceeds the explicit generation budget {budget}; use the lazy backend")]
    ExplicitBudget { count: u128, budget: u128 },

    #[error("operation not supported on the lazy backend")]
    LazyBackend,

    #[error("vertex set of size {0} exceeds the supported maximum of 16")]
    SetTooLarge(usize),

    #[error("vertex set contains a repeated vertex")]
    DuplicateVertex,

    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: u32, n: u64 },

    #[error("edge has {got} vertices, expected k={k}")]
    WrongEdgeSize { got: usize, k: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
