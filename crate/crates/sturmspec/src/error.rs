use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed continued fraction digits: {0}")]
    MalformedDigits(String),
    #[error("degenerate expansion (evaluation map gives the -1 sentinel)")]
    DegenerateExpansion,
    #[error("coupling constant V = 0: all bands coincide with [-2, 2]")]
    ZeroCoupling,
    #[error("floating point overflow while evaluating a transfer product")]
    Overflow,
    #[error("energy {0} is not a band edge (|t| differs from 2)")]
    NotAnEdge(f64),
    #[error("matrix size {size} exceeds the dense solver cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("associated band does not exist: {0}")]
    MissingNeighbor(&'static str),
    #[error("precondition not met: {0}")]
    PreconditionFail(String),
    #[error("theta triple is not admissible")]
    NotAdmissible,
    #[error("vertex level {level} exceeds available depth {depth}")]
    DepthExceeded { level: usize, depth: usize },
    #[error("path ended before the band width dropped below tolerance")]
    DepthExhausted { left: f64, right: f64 },
    #[error("path too short for the requested precision (bound {bound:e})")]
    InsufficientDepth { value: f64, bound: f64 },
    #[error("types differ across the coupling grid for band {index}")]
    Inconsistent { index: usize },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
