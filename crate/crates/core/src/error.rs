use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("volume requires full-dimensional polytope")]
    NotFullDimensional,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("not dominant: {0}")]
    NotDominant(String),
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("dilation function is not polynomial of the stated degree (residual {residual} at m = {m})")]
    NotPolynomial { m: i64, residual: String },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("internal check failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
