//! Haar wavelet family on an interval [P, Q], closed-form repeated integrals
//! and the operational matrices evaluated at the collocation points.
//!
//! Wavelet number `i >= 1`: `h_1` is the scaling function (identically one on
//! [P, Q]); for `i = m + k + 1` with `m = 2^j`, `h_i` is +1 on
//! `[eta1, eta2)`, -1 on `[eta2, eta3)` and zero elsewhere. All breakpoint
//! and integral arithmetic runs in exact rationals (every finite f64 input is
//! an exact rational), so matrix entries on dyadic grids are bit-exact.

use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::{rational, rational_from_f64, PiecewisePolynomial, Polynomial};

/// Uniform dyadic grid on [P, Q] at maximal resolution level J.
/// There are `M = 2^J` cells per half, `2M` collocation points.
#[derive(Debug, Clone, Copy)]
pub struct HaarGrid {
    p: f64,
    q: f64,
    j_max: u32,
}

impl HaarGrid {
    pub fn new(p: f64, q: f64, j_max: u32) -> Result<Self> {
        if p >= q || p.is_nan() || q.is_nan() {
            return Err(Error::InvalidIndex(format!(
                "grid endpoints must satisfy P < Q, got [{p}, {q}]"
            )));
        }
        Ok(HaarGrid { p, q, j_max })
    }

    /// The unit interval grid used by the solvers.
    pub fn unit(j_max: u32) -> Self {
        HaarGrid {
            p: 0.0,
            q: 1.0,
            j_max,
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn j_max(&self) -> u32 {
        self.j_max
    }

    /// M = 2^J.
    pub fn m(&self) -> usize {
        1usize << self.j_max
    }

    /// Number of wavelets / collocation points, 2M.
    pub fn size(&self) -> usize {
        2 * self.m()
    }

    /// Cell width (Q - P) / 2M as an exact rational.
    pub fn delta_x(&self) -> BigRational {
        (rational_from_f64(self.q) - rational_from_f64(self.p)) / rational(self.size() as i64)
    }

    /// Midpoint collocation points x_t = P + (2t - 1) dx / 2, t = 1..2M.
    pub fn collocation_points(&self) -> Vec<f64> {
        self.collocation_points_rational()
            .iter()
            .map(|x| x.to_f64().unwrap())
            .collect()
    }

    pub fn collocation_points_rational(&self) -> Vec<BigRational> {
        let dx = self.delta_x();
        let p = rational_from_f64(self.p);
        (1..=self.size())
            .map(|t| &p + rational(2 * t as i64 - 1) * &dx / rational(2))
            .collect()
    }

    fn contains(&self, x: f64) -> bool {
        x >= self.p && x <= self.q
    }
}

/// Wavelet number with its derived dilation level j, translation k and
/// m = 2^j. For i > 2, i = m + k + 1 with 0 <= k <= m - 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HaarIndex {
    i: usize,
}

impl HaarIndex {
    pub fn new(i: usize) -> Result<Self> {
        if i < 1 {
            return Err(Error::InvalidIndex("wavelet number starts at 1".into()));
        }
        Ok(HaarIndex { i })
    }

    pub fn number(&self) -> usize {
        self.i
    }

    /// Dilation level j (i >= 2).
    pub fn dilation(&self) -> u32 {
        debug_assert!(self.i >= 2);
        (usize::BITS - 1) - (self.i - 1).leading_zeros()
    }

    /// m = 2^j.
    pub fn m(&self) -> usize {
        1usize << self.dilation()
    }

    /// Translation k, 0 <= k <= m - 1.
    pub fn translation(&self) -> usize {
        self.i - self.m() - 1
    }
}

/// Support breakpoints (eta1, eta2, eta3) in exact rationals. `i = 2` uses
/// its own breakpoint formula; the generic formula applies for i > 2.
fn etas(idx: HaarIndex, grid: &HaarGrid) -> (BigRational, BigRational, BigRational) {
    let p = rational_from_f64(grid.p);
    let q = rational_from_f64(grid.q);
    if idx.i == 2 {
        let eta2 = (rational(2) * &p + &q) / rational(2);
        return (p, eta2, q);
    }
    debug_assert!(idx.i > 2);
    let mu = rational((grid.m() / idx.m()) as i64);
    let dx = grid.delta_x();
    let k = rational(idx.translation() as i64);
    let step = &mu * &dx;
    let eta1 = &p + rational(2) * &k * &step;
    let eta2 = &p + (rational(2) * &k + rational(1)) * &step;
    let eta3 = &p + rational(2) * (&k + rational(1)) * &step;
    (eta1, eta2, eta3)
}

/// Support breakpoints as f64, for callers that report or plot them.
pub fn support(idx: HaarIndex, grid: &HaarGrid) -> (f64, f64, f64) {
    let (a, b, c) = etas(idx, grid);
    (
        a.to_f64().unwrap(),
        b.to_f64().unwrap(),
        c.to_f64().unwrap(),
    )
}

/// h_i(x): +1 on [eta1, eta2), -1 on [eta2, eta3), 0 elsewhere; h_1 is 1 on
/// the whole closed interval.
pub fn haar_function(idx: HaarIndex, grid: &HaarGrid, x: f64) -> Result<f64> {
    if !grid.contains(x) {
        return Err(Error::OutOfDomain {
            x,
            lo: grid.p,
            hi: grid.q,
        });
    }
    if idx.i == 1 {
        return Ok(1.0);
    }
    let xr = rational_from_f64(x);
    let (e1, e2, e3) = etas(idx, grid);
    Ok(if xr >= e1 && xr < e2 {
        1.0
    } else if xr >= e2 && xr < e3 {
        -1.0
    } else {
        0.0
    })
}

fn factorial(nu: u32) -> BigRational {
    let mut f = BigRational::one();
    for v in 2..=nu as i64 {
        f *= rational(v);
    }
    f
}

/// Exact p_{nu,i}(x) for rational x.
pub fn haar_integral_rational(
    idx: HaarIndex,
    grid: &HaarGrid,
    nu: u32,
    x: &BigRational,
) -> BigRational {
    assert!(nu >= 1, "integration order must be >= 1");
    let fact = factorial(nu);
    let pow = |b: BigRational| -> BigRational {
        let mut acc = BigRational::one();
        for _ in 0..nu {
            acc *= &b;
        }
        acc
    };
    if idx.i == 1 {
        let p = rational_from_f64(grid.p);
        return pow(x - p) / fact;
    }
    let (e1, e2, e3) = etas(idx, grid);
    if *x < e1 {
        BigRational::zero()
    } else if *x < e2 {
        pow(x - e1) / fact
    } else if *x < e3 {
        (pow(x - &e1) - rational(2) * pow(x - &e2)) / fact
    } else {
        (pow(x - &e1) - rational(2) * pow(x - &e2) + pow(x - &e3)) / fact
    }
}

/// p_{nu,i}(x), the nu-fold integral of h_i from P, via the exact closed
/// form with one rounding at the end.
pub fn haar_integral(idx: HaarIndex, grid: &HaarGrid, nu: u32, x: f64) -> Result<f64> {
    if !grid.contains(x) {
        return Err(Error::OutOfDomain {
            x,
            lo: grid.p,
            hi: grid.q,
        });
    }
    let xr = rational_from_f64(x);
    Ok(haar_integral_rational(idx, grid, nu, &xr)
        .to_f64()
        .unwrap())
}

/// h_i as a piecewise polynomial on [P, Q]; the generic integration and
/// product machinery then provides an independent route to p_{nu,i} and the
/// orthogonality integrals.
pub fn haar_piecewise(idx: HaarIndex, grid: &HaarGrid) -> PiecewisePolynomial {
    let p = rational_from_f64(grid.p);
    let q = rational_from_f64(grid.q);
    if idx.i == 1 {
        return PiecewisePolynomial::new(vec![p, q], vec![Polynomial::from_integers(&[1])])
            .unwrap();
    }
    let (e1, e2, e3) = etas(idx, grid);
    let mut breakpoints = vec![p.clone()];
    let mut pieces = Vec::new();
    if e1 > p {
        breakpoints.push(e1.clone());
        pieces.push(Polynomial::zero());
    }
    breakpoints.push(e2.clone());
    pieces.push(Polynomial::from_integers(&[1]));
    breakpoints.push(e3.clone());
    pieces.push(Polynomial::from_integers(&[-1]));
    if e3 < q {
        breakpoints.push(q);
        pieces.push(Polynomial::zero());
    }
    PiecewisePolynomial::new(breakpoints, pieces).unwrap()
}

/// H and P_1..P_max_nu evaluated at the collocation points:
/// `H[(i-1, t-1)] = h_i(x_t)`, `P_nu[(i-1, t-1)] = p_{nu,i}(x_t)`.
#[derive(Debug, Clone)]
pub struct OperationalMatrices {
    pub h: Mat,
    pub p: Vec<Mat>,
}

/// Exact rational twins of the operational matrices (row-major nested vecs).
#[derive(Debug, Clone)]
pub struct ExactOperationalMatrices {
    pub h: Vec<Vec<BigRational>>,
    pub p: Vec<Vec<Vec<BigRational>>>,
}

pub fn build_matrices_exact(grid: &HaarGrid, max_nu: u32) -> ExactOperationalMatrices {
    assert!(max_nu >= 1);
    let n = grid.size();
    let points = grid.collocation_points_rational();
    let mut h = vec![vec![BigRational::zero(); n]; n];
    let mut p = vec![vec![vec![BigRational::zero(); n]; n]; max_nu as usize];
    for i in 1..=n {
        let idx = HaarIndex::new(i).unwrap();
        let hw = haar_piecewise(idx, grid);
        for (t, x) in points.iter().enumerate() {
            h[i - 1][t] = hw.eval_core(x);
            for nu in 1..=max_nu {
                p[nu as usize - 1][i - 1][t] = haar_integral_rational(idx, grid, nu, x);
            }
        }
    }
    ExactOperationalMatrices { h, p }
}

/// The operational matrices in f64, derived from the exact entries.
pub fn build_matrices(grid: &HaarGrid, max_nu: u32) -> OperationalMatrices {
    let exact = build_matrices_exact(grid, max_nu);
    let to_mat = |m: &Vec<Vec<BigRational>>| {
        Mat::from_rows(
            m.iter()
                .map(|row| row.iter().map(|v| v.to_f64().unwrap()).collect())
                .collect(),
        )
    };
    OperationalMatrices {
        h: to_mat(&exact.h),
        p: exact.p.iter().map(to_mat).collect(),
    }
}
