//! Exact small quantum cohomology.
//!
//! Quantum products and Dubrovin-connection checks ([`quantum`]), an operator algebra
//! in `h`, `q_i`, `θ_i = h ∂/∂t_i` ([`diffops`]), and flat sections, hypergeometric
//! J-functions and descendent invariants ([`flat`]), all over exact rationals.

pub mod algebra;
pub mod diffops;
pub mod flat;
pub mod model;
pub mod quantum;
pub mod report;
pub mod shipped;

pub use model::{builtin_model, load_model, CohClass, ModelError, ModelSpec};

/// Default truncation order in the Novikov variables.
pub const DEFAULT_ORDER: u32 = 6;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not invertible: {0}")]
    NonInvertible(String),
    #[error(transparent)]
    Parse(#[from] diffops::ParseError),
    #[error("line {line}: {error}")]
    ParseLine { line: usize, error: diffops::ParseError },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent recursion at D={degree}: {detail}")]
    Inconsistent { degree: algebra::MultiDegree, detail: String },
    #[error("{0}")]
    Check(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
