//! The singular boundary value problem `y'' + (k_g/t) y' + f(t, y) = 0` on
//! (0, 1] with one of three boundary condition cases, plus pointwise residual
//! and quasilinearization helpers.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Which pair of boundary conditions closes the problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcKind {
    /// y'(0) = alpha, y(1) = beta
    NeumannDirichlet,
    /// y(0) = alpha, y(1) = beta
    DirichletDirichlet,
    /// y'(0) = alpha, a y(1) + b y'(1) = beta
    NeumannRobin,
}

/// Boundary data. `a` and `b` are only meaningful for [`BcKind::NeumannRobin`]
/// (which requires `a != 0`; [`crate::collocation::assemble`] enforces it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCondition {
    pub kind: BcKind,
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
}

impl BoundaryCondition {
    pub fn neumann_dirichlet(alpha: f64, beta: f64) -> Self {
        BoundaryCondition {
            kind: BcKind::NeumannDirichlet,
            alpha,
            beta,
            a: 0.0,
            b: 0.0,
        }
    }

    pub fn dirichlet_dirichlet(alpha: f64, beta: f64) -> Self {
        BoundaryCondition {
            kind: BcKind::DirichletDirichlet,
            alpha,
            beta,
            a: 0.0,
            b: 0.0,
        }
    }

    pub fn neumann_robin(alpha: f64, a: f64, b: f64, beta: f64) -> Self {
        BoundaryCondition {
            kind: BcKind::NeumannRobin,
            alpha,
            beta,
            a,
            b,
        }
    }
}

type ScalarFn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type ScalarFn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Problem data: shape factor, nonlinearity f(t, y) with its y-derivative,
/// boundary conditions, and the exact solution when one is known. Callables
/// must be pure; everything is immutable and freely shareable.
#[derive(Clone)]
pub struct SBVProblem {
    pub name: String,
    pub k_g: f64,
    f: ScalarFn2,
    f_y: ScalarFn2,
    pub bc: BoundaryCondition,
    exact: Option<ScalarFn1>,
}

impl SBVProblem {
    pub fn new(
        name: impl Into<String>,
        k_g: f64,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        f_y: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        bc: BoundaryCondition,
    ) -> Self {
        SBVProblem {
            name: name.into(),
            k_g,
            f: Arc::new(f),
            f_y: Arc::new(f_y),
            bc,
            exact: None,
        }
    }

    pub fn with_exact(mut self, exact: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.exact = Some(Arc::new(exact));
        self
    }

    pub fn f(&self, t: f64, y: f64) -> f64 {
        (self.f)(t, y)
    }

    pub fn f_y(&self, t: f64, y: f64) -> f64 {
        (self.f_y)(t, y)
    }

    pub fn exact(&self) -> Option<&(dyn Fn(f64) -> f64 + Send + Sync)> {
        self.exact.as_deref()
    }
}

impl fmt::Debug for SBVProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SBVProblem")
            .field("name", &self.name)
            .field("k_g", &self.k_g)
            .field("bc", &self.bc)
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

/// A candidate value/derivative pair at a point, for residual checks.
#[derive(Debug, Clone, Copy)]
pub struct StateTriple {
    pub t: f64,
    pub y: f64,
    pub yp: f64,
    pub ypp: f64,
}

/// Pointwise residual `y'' + (k_g/t) y' + f(t, y)`; zero iff the triple
/// satisfies the equation at t. Defined for t > 0 only.
pub fn residual(p: &SBVProblem, s: &StateTriple) -> Result<f64> {
    if s.t <= 0.0 {
        return Err(Error::SingularPoint);
    }
    Ok(s.ypp + p.k_g / s.t * s.yp + p.f(s.t, s.y))
}

/// One quasilinearization step about `y_r` at a point: returns
/// `(rhs, coeff)` so that the linearized equation reads
/// `L y_{r+1} - coeff * y_{r+1} = rhs` with
/// `rhs = -f(t, y_r) + y_r f_y(t, y_r)` and `coeff = -f_y(t, y_r)`.
/// (Dependence of f on y' is structurally allowed by the expansion but every
/// problem in this crate has f = f(t, y), so that term is identically zero.)
pub fn linearized_rhs(p: &SBVProblem, t: f64, y_r: f64) -> Result<(f64, f64)> {
    if t <= 0.0 {
        return Err(Error::SingularPoint);
    }
    let fy = p.f_y(t, y_r);
    Ok((-p.f(t, y_r) + y_r * fy, -fy))
}
