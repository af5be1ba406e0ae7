//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by basis construction, collocation assembly and the solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation point lies outside the interval the basis is defined on.
    #[error("point {x} is outside the basis interval [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    /// The differential operator has a 1/t coefficient and cannot be
    /// evaluated at t = 0.
    #[error("the operator is singular at t = 0; residuals are defined for t > 0 only")]
    SingularPoint,

    /// Robin boundary data with a = 0 cannot be solved for y(0).
    #[error("Robin boundary condition a*y(1) + b*y'(1) = beta requires a != 0")]
    InvalidBoundary,

    /// An index or resolution violated its structural constraints.
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    /// Pivoting found no usable pivot; the matrix is singular to working
    /// precision.
    #[error("matrix is numerically singular (pivot {pivot:.3e} at column {column})")]
    SingularMatrix { pivot: f64, column: usize },

    /// A solver hit a singular linear system; `iteration` names the outer
    /// iteration that produced it.
    #[error("linear system became singular at iteration {iteration} (pivot {pivot:.3e})")]
    SingularSystem { iteration: usize, pivot: f64 },

    /// Solver configuration violated an invariant (tolerance, sizes, ...).
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    /// A manufactured problem was requested with data inconsistent with its
    /// boundary case.
    #[error("manufactured solution requires exact'(0) = 0 for Neumann boundary cases")]
    InvalidManufactured,

    /// An unknown benchmark key was requested from the registry.
    #[error("unknown problem key: {0}")]
    UnknownProblem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
