//! The four solution methods: quasilinearization (QA) or Newton-Raphson on
//! the coefficients (NA), over either wavelet basis.
//!
//! Both drivers share the affine reconstruction maps of a
//! [`CollocationSystem`]. QA iterates on nodal values, solving one linear
//! collocation system per step; NA forms the nonlinear residual in the
//! coefficients and applies undamped Newton with an analytic or
//! finite-difference Jacobian. Converged QA and NA solve the same discrete
//! equations, so their solutions agree to solver tolerance.

use crate::collocation::{assemble, BasisFamily, BasisSpec, CollocationSystem};
use crate::error::{Error, Result};
use crate::linalg::{dot, solve_linear_system, sup_norm, Mat};
use crate::problem::SBVProblem;

/// Outer iteration family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Quasilinearization: linearize f about the previous iterate.
    Qa,
    /// Newton-Raphson on the basis coefficients.
    Na,
}

/// How NA builds its Jacobian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobianMode {
    Analytic,
    FiniteDifference,
}

/// The four named method/basis combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WaveletMethod {
    Hwqa,
    Hwna,
    Hewqa,
    Hewna,
}

impl WaveletMethod {
    pub const ALL: [WaveletMethod; 4] = [
        WaveletMethod::Hwqa,
        WaveletMethod::Hwna,
        WaveletMethod::Hewqa,
        WaveletMethod::Hewna,
    ];

    pub fn family(&self) -> BasisFamily {
        match self {
            WaveletMethod::Hwqa | WaveletMethod::Hwna => BasisFamily::Haar,
            WaveletMethod::Hewqa | WaveletMethod::Hewna => BasisFamily::Hermite,
        }
    }

    pub fn method(&self) -> Method {
        match self {
            WaveletMethod::Hwqa | WaveletMethod::Hewqa => Method::Qa,
            WaveletMethod::Hwna | WaveletMethod::Hewna => Method::Na,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WaveletMethod::Hwqa => "HWQA",
            WaveletMethod::Hwna => "HWNA",
            WaveletMethod::Hewqa => "HeWQA",
            WaveletMethod::Hewna => "HeWNA",
        }
    }

    pub fn parse(s: &str) -> Option<WaveletMethod> {
        match s.to_ascii_lowercase().as_str() {
            "hwqa" => Some(WaveletMethod::Hwqa),
            "hwna" => Some(WaveletMethod::Hwna),
            "hewqa" => Some(WaveletMethod::Hewqa),
            "hewna" => Some(WaveletMethod::Hewna),
            _ => None,
        }
    }

    /// Basis spec at this method's natural reading of a resolution value
    /// (Haar: maximal level J; Hermite: basis size M).
    pub fn basis_spec(&self, resolution: u32) -> BasisSpec {
        BasisSpec {
            family: self.family(),
            resolution,
        }
    }
}

impl std::fmt::Display for WaveletMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Solver settings. `initial_vector` is the nodal guess at the collocation
/// points for QA; for NA it is mapped to an initial coefficient vector
/// through one linear solve of the affine reconstruction system.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub method: Method,
    pub basis: BasisSpec,
    pub tol: f64,
    pub max_iter: usize,
    pub initial_vector: Vec<f64>,
    pub jacobian: JacobianMode,
    pub fd_step: f64,
}

impl SolverConfig {
    pub fn new(method: Method, basis: BasisSpec) -> Self {
        SolverConfig {
            method,
            basis,
            tol: 1e-12,
            max_iter: 50,
            initial_vector: vec![0.0; basis.coefficient_count()],
            jacobian: JacobianMode::Analytic,
            fd_step: 1e-7,
        }
    }

    pub fn with_init_const(mut self, value: f64) -> Self {
        self.initial_vector = vec![value; self.basis.coefficient_count()];
        self
    }

    pub fn with_init(mut self, init: Vec<f64>) -> Self {
        self.initial_vector = init;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_jacobian(mut self, mode: JacobianMode) -> Self {
        self.jacobian = mode;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig("tol must be positive".into()));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidConfig("max_iter must be >= 1".into()));
        }
        if self.initial_vector.len() != self.basis.coefficient_count() {
            return Err(Error::InvalidConfig(format!(
                "initial vector has length {}, basis needs {}",
                self.initial_vector.len(),
                self.basis.coefficient_count()
            )));
        }
        if self.fd_step.is_nan() || self.fd_step <= 0.0 {
            return Err(Error::InvalidConfig("fd_step must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of a solve. Non-convergence is reported here (with the iteration
/// trace and a diagnostic), not as an error; only structural failures such as
/// a singular linear system surface as [`Error`].
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub coefficients: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub final_update_norm: f64,
    /// Sup-norm of the update at each outer iteration.
    pub trace: Vec<f64>,
    /// Present when the iteration was abandoned (non-finite values).
    pub diagnostic: Option<String>,
}

/// Dispatch on `cfg.method`.
pub fn solve(problem: &SBVProblem, cfg: &SolverConfig) -> Result<SolveResult> {
    match cfg.method {
        Method::Qa => solve_qa(problem, cfg),
        Method::Na => solve_na(problem, cfg),
    }
}

pub fn solve_qa(problem: &SBVProblem, cfg: &SolverConfig) -> Result<SolveResult> {
    let sys = assemble(cfg.basis, problem.bc)?;
    solve_qa_with(&sys, problem, cfg)
}

pub fn solve_na(problem: &SBVProblem, cfg: &SolverConfig) -> Result<SolveResult> {
    let sys = assemble(cfg.basis, problem.bc)?;
    solve_na_with(&sys, problem, cfg)
}

/// QA driver over a pre-assembled system.
pub fn solve_qa_with(
    sys: &CollocationSystem,
    problem: &SBVProblem,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    cfg.validate()?;
    let n = sys.len();
    let pts = sys.points();
    let kg = problem.k_g;

    let mut y = cfg.initial_vector.clone();
    let mut coeffs = vec![0.0; n];
    let mut trace = Vec::new();

    for iteration in 1..=cfg.max_iter {
        let mut a = Mat::zeros(n, n);
        let mut rhs = vec![0.0; n];
        for l in 0..n {
            let t = pts[l];
            let fy = problem.f_y(t, y[l]);
            let fv = problem.f(t, y[l]);
            if !fy.is_finite() || !fv.is_finite() {
                return Ok(SolveResult {
                    coefficients: coeffs,
                    iterations: iteration,
                    converged: false,
                    final_update_norm: f64::INFINITY,
                    trace,
                    diagnostic: Some(format!(
                        "f or f_y non-finite at t = {t}, y = {} (iteration {iteration})",
                        y[l]
                    )),
                });
            }
            let w = kg / t;
            for i in 0..n {
                a[(l, i)] = sys.b0()[(l, i)]
                    + w * sys.deriv_lin()[(l, i)]
                    + fy * sys.value_lin()[(l, i)];
            }
            rhs[l] = -fv + y[l] * fy - w * sys.deriv_const()[l] - fy * sys.value_const()[l];
        }
        coeffs = solve_linear_system(&a, &rhs).map_err(|e| match e {
            Error::SingularMatrix { pivot, .. } => Error::SingularSystem { iteration, pivot },
            other => other,
        })?;
        let y_new = sys.values_at_points(&coeffs);
        if y_new.iter().any(|v| !v.is_finite()) {
            return Ok(SolveResult {
                coefficients: coeffs,
                iterations: iteration,
                converged: false,
                final_update_norm: f64::INFINITY,
                trace,
                diagnostic: Some(format!("iterate became non-finite at iteration {iteration}")),
            });
        }
        let update = y_new
            .iter()
            .zip(&y)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        trace.push(update);
        y = y_new;
        if update <= cfg.tol {
            return Ok(SolveResult {
                coefficients: coeffs,
                iterations: iteration,
                converged: true,
                final_update_norm: update,
                trace,
                diagnostic: None,
            });
        }
    }
    let final_update_norm = trace.last().copied().unwrap_or(f64::INFINITY);
    Ok(SolveResult {
        coefficients: coeffs,
        iterations: cfg.max_iter,
        converged: false,
        final_update_norm,
        trace,
        diagnostic: None,
    })
}

/// Nonlinear collocation residual F(c) through the affine maps; `None` when
/// f returns a non-finite value.
pub fn nonlinear_residual(
    sys: &CollocationSystem,
    problem: &SBVProblem,
    coeffs: &[f64],
) -> Option<Vec<f64>> {
    let n = sys.len();
    let pts = sys.points();
    let y = sys.values_at_points(coeffs);
    let mut out = Vec::with_capacity(n);
    for l in 0..n {
        let t = pts[l];
        let fv = problem.f(t, y[l]);
        if !fv.is_finite() || !y[l].is_finite() {
            return None;
        }
        let ypp = dot(sys.b0().row(l), coeffs);
        let yp = dot(sys.deriv_lin().row(l), coeffs) + sys.deriv_const()[l];
        out.push(ypp + problem.k_g / t * yp + fv);
    }
    Some(out)
}

/// Jacobian of [`nonlinear_residual`]: analytic rows
/// `B0 + (k_g/x_l) D + f_y(x_l, y_l) V`, or forward differences with a
/// per-column step `fd_step * (1 + |c_i|)`.
pub fn nonlinear_jacobian(
    sys: &CollocationSystem,
    problem: &SBVProblem,
    coeffs: &[f64],
    mode: JacobianMode,
    fd_step: f64,
) -> Option<Mat> {
    let n = sys.len();
    match mode {
        JacobianMode::Analytic => {
            let pts = sys.points();
            let y = sys.values_at_points(coeffs);
            let mut j = Mat::zeros(n, n);
            for l in 0..n {
                let t = pts[l];
                let fy = problem.f_y(t, y[l]);
                if !fy.is_finite() {
                    return None;
                }
                let w = problem.k_g / t;
                for i in 0..n {
                    j[(l, i)] = sys.b0()[(l, i)]
                        + w * sys.deriv_lin()[(l, i)]
                        + fy * sys.value_lin()[(l, i)];
                }
            }
            Some(j)
        }
        JacobianMode::FiniteDifference => {
            let base = nonlinear_residual(sys, problem, coeffs)?;
            let mut j = Mat::zeros(n, n);
            let mut bumped = coeffs.to_vec();
            for i in 0..n {
                let h = fd_step * (1.0 + coeffs[i].abs());
                bumped[i] = coeffs[i] + h;
                let fb = nonlinear_residual(sys, problem, &bumped)?;
                bumped[i] = coeffs[i];
                for l in 0..n {
                    j[(l, i)] = (fb[l] - base[l]) / h;
                }
            }
            Some(j)
        }
    }
}

/// NA driver over a pre-assembled system.
pub fn solve_na_with(
    sys: &CollocationSystem,
    problem: &SBVProblem,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    cfg.validate()?;

    // nodal guess -> coefficients: V c = y0 - v0
    let rhs: Vec<f64> = cfg
        .initial_vector
        .iter()
        .zip(sys.value_const())
        .map(|(y, c)| y - c)
        .collect();
    let mut coeffs = solve_linear_system(sys.value_lin(), &rhs).map_err(|e| match e {
        Error::SingularMatrix { pivot, .. } => Error::SingularSystem { iteration: 0, pivot },
        other => other,
    })?;

    let mut trace = Vec::new();
    let abandon = |coeffs: Vec<f64>, iteration: usize, trace: Vec<f64>, what: &str| SolveResult {
        coefficients: coeffs,
        iterations: iteration,
        converged: false,
        final_update_norm: f64::INFINITY,
        trace,
        diagnostic: Some(format!("{what} at iteration {iteration}")),
    };

    for iteration in 1..=cfg.max_iter {
        let Some(f) = nonlinear_residual(sys, problem, &coeffs) else {
            return Ok(abandon(coeffs, iteration, trace, "residual non-finite"));
        };
        let Some(jac) = nonlinear_jacobian(sys, problem, &coeffs, cfg.jacobian, cfg.fd_step)
        else {
            return Ok(abandon(coeffs, iteration, trace, "Jacobian non-finite"));
        };
        let neg_f: Vec<f64> = f.iter().map(|v| -v).collect();
        let delta = solve_linear_system(&jac, &neg_f).map_err(|e| match e {
            Error::SingularMatrix { pivot, .. } => Error::SingularSystem { iteration, pivot },
            other => other,
        })?;
        for (c, d) in coeffs.iter_mut().zip(&delta) {
            *c += d;
        }
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Ok(abandon(coeffs, iteration, trace, "iterate non-finite"));
        }
        let update = sup_norm(&delta);
        trace.push(update);
        if update <= cfg.tol {
            return Ok(SolveResult {
                coefficients: coeffs,
                iterations: iteration,
                converged: true,
                final_update_norm: update,
                trace,
                diagnostic: None,
            });
        }
    }
    let final_update_norm = trace.last().copied().unwrap_or(f64::INFINITY);
    Ok(SolveResult {
        coefficients: coeffs,
        iterations: cfg.max_iter,
        converged: false,
        final_update_norm,
        trace,
        diagnostic: None,
    })
}

/// Maximum absolute and root-sum-square errors of `values` against `exact`
/// over the given points (the reported grid, t = 0 row included).
pub fn error_norms(points: &[f64], values: &[f64], exact: &dyn Fn(f64) -> f64) -> (f64, f64) {
    assert_eq!(points.len(), values.len());
    let mut linf = 0.0f64;
    let mut sum_sq = 0.0f64;
    for (&t, &v) in points.iter().zip(values) {
        let e = (v - exact(t)).abs();
        linf = linf.max(e);
        sum_sq += e * e;
    }
    (linf, sum_sq.sqrt())
}

/// The reported grid for a system: {0} ∪ collocation points, plus {1} for
/// Robin problems (their tables include the t = 1 row).
pub fn reported_grid(sys: &CollocationSystem) -> Vec<f64> {
    let mut grid = Vec::with_capacity(sys.len() + 2);
    grid.push(0.0);
    grid.extend_from_slice(sys.points());
    if sys.bc().kind == crate::problem::BcKind::NeumannRobin {
        grid.push(1.0);
    }
    grid
}
