//! Wavelet collocation solvers for nonlinear singular two-point boundary
//! value problems of Lane-Emden type,
//!
//! ```text
//! y''(t) + (k_g / t) y'(t) + f(t, y(t)) = 0,   0 < t <= 1,
//! ```
//!
//! closed by Neumann-Dirichlet, Dirichlet-Dirichlet or Neumann-Robin
//! boundary data. The second derivative is expanded in a Haar or Hermite
//! wavelet basis; exact repeated integrals of the basis functions and the
//! boundary algebra turn the ODE into a square system in the coefficients,
//! solved either by quasilinearization (an outer linearization loop) or by
//! Newton-Raphson on the full nonlinear system.
//!
//! Quick start:
//!
//! ```
//! use sbvp::{assemble, benchmarks, error_norms, reported_grid, solve};
//! use sbvp::{BasisSpec, Method, SolverConfig};
//!
//! let case = benchmarks::make_stellar();
//! let basis = BasisSpec::hermite(8);
//! let cfg = SolverConfig::new(Method::Na, basis)
//!     .with_init(case.default_init.vector(basis.coefficient_count()));
//! let result = solve(&case.problem, &cfg).unwrap();
//! assert!(result.converged);
//!
//! let sys = assemble(basis, case.problem.bc).unwrap();
//! let grid = reported_grid(&sys);
//! let values: Vec<f64> = grid
//!     .iter()
//!     .map(|&t| sys.reconstruct(&result.coefficients, t).0)
//!     .collect();
//! let (linf, _l2) = error_norms(&grid, &values, case.problem.exact().unwrap());
//! assert!(linf < 1e-7);
//! ```

pub mod benchmarks;
pub mod collocation;
pub mod error;
pub mod haar;
pub mod hermite;
pub mod linalg;
pub mod poly;
pub mod problem;
pub mod solver;

pub use collocation::{assemble, collocation_points, BasisFamily, BasisSpec, CollocationSystem};
pub use error::{Error, Result};
pub use haar::{build_matrices, haar_function, haar_integral, HaarGrid, HaarIndex};
pub use hermite::{hermite_polynomial, hermite_wavelet, integrate_wavelet, HermiteWaveletIndex};
pub use linalg::{solve_linear_system, Mat};
pub use poly::{PiecewisePolynomial, Polynomial};
pub use problem::{linearized_rhs, residual, BcKind, BoundaryCondition, SBVProblem, StateTriple};
pub use solver::{
    error_norms, reported_grid, solve, solve_na, solve_qa, JacobianMode, Method, SolveResult,
    SolverConfig, WaveletMethod,
};
