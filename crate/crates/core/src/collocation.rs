//! Collocation systems: a basis plus boundary conditions turned into affine
//! maps from coefficient vectors to (y, y', y'') at arbitrary points.
//!
//! The second derivative is expanded in the basis, `y'' = sum_i c_i B_i`;
//! integrating twice introduces y'(0) and y(0), which are eliminated through
//! the active boundary conditions. The result is, for every t,
//!
//! ```text
//! y''(t) = B0(t) . c
//! y'(t)  = D(t) . c + d0(t)
//! y(t)   = V(t) . c + v0(t)
//! ```
//!
//! with case-dependent corrections built from the once- and twice-integrated
//! basis values at t = 1. The maps are affine in `c` by construction, so the
//! boundary conditions hold identically for every coefficient vector.

use crate::error::{Error, Result};
use crate::haar::{self, HaarGrid, HaarIndex};
use crate::hermite::{hermite_wavelet, integrate_wavelet, HermiteWaveletIndex};
use crate::linalg::{dot, Mat};
use crate::poly::PiecewisePolynomial;
use crate::problem::{BcKind, BoundaryCondition};

/// Which wavelet family the collocation system is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFamily {
    Haar,
    Hermite,
}

/// Basis selection: Haar at maximal level J (2^{J+1} coefficients) or
/// Hermite at level k = 1 with M polynomial orders (M coefficients).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisSpec {
    pub family: BasisFamily,
    pub resolution: u32,
}

impl BasisSpec {
    pub fn haar(j_max: u32) -> Self {
        BasisSpec {
            family: BasisFamily::Haar,
            resolution: j_max,
        }
    }

    pub fn hermite(m: u32) -> Self {
        BasisSpec {
            family: BasisFamily::Hermite,
            resolution: m,
        }
    }

    /// Number of coefficients N.
    pub fn coefficient_count(&self) -> usize {
        match self.family {
            BasisFamily::Haar => 1usize
                .checked_shl(self.resolution + 1)
                .unwrap_or(usize::MAX),
            BasisFamily::Hermite => self.resolution as usize,
        }
    }

    fn validate(&self) -> Result<()> {
        let max = match self.family {
            BasisFamily::Haar => 11,   // N = 4096
            BasisFamily::Hermite => 64, // higher orders are numerically useless
        };
        if self.resolution > max {
            return Err(Error::InvalidIndex(format!(
                "resolution {} exceeds the supported maximum {max} for {:?}",
                self.resolution, self.family
            )));
        }
        if self.coefficient_count() < 2 {
            return Err(Error::InvalidIndex(
                "basis must have at least two coefficients".into(),
            ));
        }
        Ok(())
    }
}

/// N midpoints of a uniform partition of [0, 1]: x_l = (2l - 1) / 2N.
pub fn collocation_points(spec: BasisSpec) -> Vec<f64> {
    let n = spec.coefficient_count();
    (1..=n).map(|l| (2 * l - 1) as f64 / (2 * n) as f64).collect()
}

struct WaveletTriple {
    psi: PiecewisePolynomial,
    j1: PiecewisePolynomial,
    j2: PiecewisePolynomial,
}

enum BasisSet {
    Haar(HaarGrid),
    Hermite(Vec<WaveletTriple>),
}

impl BasisSet {
    fn build(spec: BasisSpec) -> Result<BasisSet> {
        match spec.family {
            BasisFamily::Haar => Ok(BasisSet::Haar(HaarGrid::unit(spec.resolution))),
            BasisFamily::Hermite => {
                let triples = (0..spec.resolution)
                    .map(|m| {
                        let idx = HermiteWaveletIndex::new(1, 1, m)?;
                        Ok(WaveletTriple {
                            psi: hermite_wavelet(idx),
                            j1: integrate_wavelet(idx, 1),
                            j2: integrate_wavelet(idx, 2),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(BasisSet::Hermite(triples))
            }
        }
    }

    fn value(&self, i: usize, t: f64) -> f64 {
        match self {
            BasisSet::Haar(grid) => {
                haar::haar_function(HaarIndex::new(i + 1).unwrap(), grid, t).unwrap()
            }
            BasisSet::Hermite(funcs) => funcs[i].psi.eval(t),
        }
    }

    fn integral(&self, i: usize, nu: u32, t: f64) -> f64 {
        match self {
            BasisSet::Haar(grid) => {
                haar::haar_integral(HaarIndex::new(i + 1).unwrap(), grid, nu, t).unwrap()
            }
            BasisSet::Hermite(funcs) => match nu {
                1 => funcs[i].j1.eval(t),
                2 => funcs[i].j2.eval(t),
                _ => unreachable!("solver uses nu in {{1, 2}}"),
            },
        }
    }
}

/// Assembled collocation data for one basis and one boundary condition.
pub struct CollocationSystem {
    spec: BasisSpec,
    bc: BoundaryCondition,
    points: Vec<f64>,
    basis: BasisSet,
    b0: Mat,
    b1_at_one: Vec<f64>,
    b2_at_one: Vec<f64>,
    value_lin: Mat,
    value_const: Vec<f64>,
    deriv_lin: Mat,
    deriv_const: Vec<f64>,
}

/// Build the system: basis evaluations at the collocation points and the
/// boundary-term affine maps for the given case.
pub fn assemble(spec: BasisSpec, bc: BoundaryCondition) -> Result<CollocationSystem> {
    spec.validate()?;
    if bc.kind == BcKind::NeumannRobin && bc.a == 0.0 {
        return Err(Error::InvalidBoundary);
    }
    let n = spec.coefficient_count();
    let basis = BasisSet::build(spec)?;
    let points = collocation_points(spec);

    let mut b0 = Mat::zeros(n, n);
    let mut b1 = Mat::zeros(n, n);
    let mut b2 = Mat::zeros(n, n);
    for (l, &x) in points.iter().enumerate() {
        for i in 0..n {
            b0[(l, i)] = basis.value(i, x);
            b1[(l, i)] = basis.integral(i, 1, x);
            b2[(l, i)] = basis.integral(i, 2, x);
        }
    }
    let b1_at_one: Vec<f64> = (0..n).map(|i| basis.integral(i, 1, 1.0)).collect();
    let b2_at_one: Vec<f64> = (0..n).map(|i| basis.integral(i, 2, 1.0)).collect();

    let mut sys = CollocationSystem {
        spec,
        bc,
        points,
        basis,
        b0,
        b1_at_one,
        b2_at_one,
        value_lin: Mat::zeros(n, n),
        value_const: vec![0.0; n],
        deriv_lin: Mat::zeros(n, n),
        deriv_const: vec![0.0; n],
    };
    for l in 0..n {
        let t = sys.points[l];
        let (vrow, vc) = sys.value_row_from(b2.row(l), t);
        sys.value_lin.row_mut(l).copy_from_slice(&vrow);
        sys.value_const[l] = vc;
        let (drow, dc) = sys.deriv_row_from(b1.row(l), t);
        sys.deriv_lin.row_mut(l).copy_from_slice(&drow);
        sys.deriv_const[l] = dc;
    }
    Ok(sys)
}

impl CollocationSystem {
    pub fn spec(&self) -> BasisSpec {
        self.spec
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Raw second-derivative basis values at the collocation points.
    pub fn b0(&self) -> &Mat {
        &self.b0
    }

    /// Linear part of c -> y at the collocation points.
    pub fn value_lin(&self) -> &Mat {
        &self.value_lin
    }

    /// Constant part of c -> y at the collocation points.
    pub fn value_const(&self) -> &[f64] {
        &self.value_const
    }

    /// Linear part of c -> y' at the collocation points.
    pub fn deriv_lin(&self) -> &Mat {
        &self.deriv_lin
    }

    /// Constant part of c -> y' at the collocation points.
    pub fn deriv_const(&self) -> &[f64] {
        &self.deriv_const
    }

    pub fn b1_at_one(&self) -> &[f64] {
        &self.b1_at_one
    }

    pub fn b2_at_one(&self) -> &[f64] {
        &self.b2_at_one
    }

    fn value_row_from(&self, b2_row: &[f64], t: f64) -> (Vec<f64>, f64) {
        let bc = &self.bc;
        match bc.kind {
            BcKind::NeumannDirichlet => (
                b2_row
                    .iter()
                    .zip(&self.b2_at_one)
                    .map(|(v, e)| v - e)
                    .collect(),
                (t - 1.0) * bc.alpha + bc.beta,
            ),
            BcKind::DirichletDirichlet => (
                b2_row
                    .iter()
                    .zip(&self.b2_at_one)
                    .map(|(v, e)| v - t * e)
                    .collect(),
                (1.0 - t) * bc.alpha + t * bc.beta,
            ),
            BcKind::NeumannRobin => {
                let ba = bc.b / bc.a;
                (
                    b2_row
                        .iter()
                        .zip(self.b2_at_one.iter().zip(&self.b1_at_one))
                        .map(|(v, (e2, e1))| v - e2 - ba * e1)
                        .collect(),
                    bc.beta / bc.a + (t - 1.0 - ba) * bc.alpha,
                )
            }
        }
    }

    fn deriv_row_from(&self, b1_row: &[f64], _t: f64) -> (Vec<f64>, f64) {
        let bc = &self.bc;
        match bc.kind {
            BcKind::NeumannDirichlet | BcKind::NeumannRobin => (b1_row.to_vec(), bc.alpha),
            BcKind::DirichletDirichlet => (
                b1_row
                    .iter()
                    .zip(&self.b2_at_one)
                    .map(|(v, e)| v - e)
                    .collect(),
                bc.beta - bc.alpha,
            ),
        }
    }

    /// Affine map for y(t) at arbitrary t in [0, 1]: returns (row, const)
    /// with y(t) = row . c + const.
    pub fn value_row(&self, t: f64) -> (Vec<f64>, f64) {
        let n = self.len();
        let b2_row: Vec<f64> = (0..n).map(|i| self.basis.integral(i, 2, t)).collect();
        self.value_row_from(&b2_row, t)
    }

    /// Affine map for y'(t) at arbitrary t.
    pub fn deriv_row(&self, t: f64) -> (Vec<f64>, f64) {
        let n = self.len();
        let b1_row: Vec<f64> = (0..n).map(|i| self.basis.integral(i, 1, t)).collect();
        self.deriv_row_from(&b1_row, t)
    }

    /// Basis row for y''(t) at arbitrary t (no boundary terms).
    pub fn second_deriv_row(&self, t: f64) -> Vec<f64> {
        let n = self.len();
        (0..n).map(|i| self.basis.value(i, t)).collect()
    }

    /// Evaluate the represented solution at arbitrary t in [0, 1],
    /// including the endpoints used by report tables.
    pub fn reconstruct(&self, coeffs: &[f64], t: f64) -> (f64, f64, f64) {
        debug_assert!((-1e-12..=1.0 + 1e-12).contains(&t), "t out of [0,1]");
        let (vrow, vc) = self.value_row(t);
        let (drow, dc) = self.deriv_row(t);
        let srow = self.second_deriv_row(t);
        (
            dot(&vrow, coeffs) + vc,
            dot(&drow, coeffs) + dc,
            dot(&srow, coeffs),
        )
    }

    /// y at all collocation points for a coefficient vector.
    pub fn values_at_points(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut v = self.value_lin.mul_vec(coeffs);
        for (x, c) in v.iter_mut().zip(&self.value_const) {
            *x += c;
        }
        v
    }
}
