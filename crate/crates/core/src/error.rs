use thiserror::Error;

/// Errors raised by the polytope kernel and everything built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("scale factor must be non-zero")]
    ZeroScale,
    #[error("origin is not strictly inside the body")]
    OriginNotInterior,
    #[error("origin is not contained in the body")]
    OriginNotContained,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("intersection has empty interior")]
    EmptyIntersection,
    #[error("section is empty")]
    EmptySection,
    #[error("section is lower-dimensional inside the subspace")]
    DegenerateSection,
    #[error("interior witness violates a constraint (slack {0:e})")]
    BadWitness(f64),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("interpolation system ill-conditioned (estimate {0:e})")]
    IllConditioned(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bad body spec: {0}")]
    BadSpec(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
