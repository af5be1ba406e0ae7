//! Hermite polynomials, Hermite wavelets and their repeated integrals.
//!
//! The wavelet `psi_{n,m}` at resolution level `k` is the Hermite polynomial
//! `H_m`, shifted to the dyadic support `[(n̂-1)/2^k, (n̂+1)/2^k)` with
//! `n̂ = 2n - 1` and multiplied by the normalization constant
//! `2^{k/2} / sqrt(n! 2^n sqrt(pi))`. The polynomial part is exact rational;
//! the (irrational) normalization is the piecewise polynomial's scale factor.
//!
//! Repeated integrals are true integrals from 0: past the support the result
//! continues as a degree-(nu-1) polynomial tail rather than being truncated,
//! which is what makes multi-level linear systems consistent.

use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rational, ratio, PiecewisePolynomial, Polynomial};

/// Index (k, n, m) of a Hermite wavelet: resolution level k >= 1, translation
/// 1 <= n <= 2^{k-1}, polynomial order m >= 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HermiteWaveletIndex {
    k: u32,
    n: u32,
    m: u32,
}

impl HermiteWaveletIndex {
    pub fn new(k: u32, n: u32, m: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidIndex("resolution level k must be >= 1".into()));
        }
        let max_n = 1u32 << (k - 1);
        if n < 1 || n > max_n {
            return Err(Error::InvalidIndex(format!(
                "translation n must satisfy 1 <= n <= 2^(k-1) = {max_n}, got {n}"
            )));
        }
        Ok(HermiteWaveletIndex { k, n, m })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// n̂ = 2n - 1, the translation parameter.
    pub fn n_hat(&self) -> u32 {
        2 * self.n - 1
    }

    /// Support `[(n̂-1)/2^k, (n̂+1)/2^k)` as exact rationals.
    pub fn support(&self) -> (BigRational, BigRational) {
        let denom = 1i64 << self.k;
        let nh = self.n_hat() as i64;
        (ratio(nh - 1, denom), ratio(nh + 1, denom))
    }

    /// Normalization constant `2^{k/2} / sqrt(n! 2^n sqrt(pi))`.
    pub fn normalization(&self) -> f64 {
        let n_fact: f64 = (1..=self.n as u64).map(|v| v as f64).product();
        let two_k = (1u64 << self.k) as f64;
        let two_n = (1u64 << self.n) as f64;
        two_k.sqrt() / (n_fact * two_n * std::f64::consts::PI.sqrt()).sqrt()
    }
}

/// H_m via the recurrence H_{m+1}(t) = 2t H_m(t) - 2m H_{m-1}(t), starting
/// from H_0 = 1, H_1 = 2t. Exact integer coefficients; degree m, leading
/// coefficient 2^m.
pub fn hermite_polynomial(m: u32) -> Polynomial {
    let mut prev = Polynomial::from_integers(&[1]);
    if m == 0 {
        return prev;
    }
    let mut cur = Polynomial::from_integers(&[0, 2]);
    let two_t = Polynomial::from_integers(&[0, 2]);
    for j in 1..m {
        let next = two_t.mul(&cur).sub(&prev.scale(&rational(2 * j as i64)));
        prev = cur;
        cur = next;
    }
    cur
}

fn wavelet_core(idx: HermiteWaveletIndex) -> PiecewisePolynomial {
    let (lo, hi) = idx.support();
    let scale_arg = rational(1i64 << idx.k); // 2^k
    let shift = -rational(idx.n_hat() as i64);
    let on_support = hermite_polynomial(idx.m).compose_affine(&scale_arg, &shift);

    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut breakpoints = vec![zero.clone()];
    let mut pieces = Vec::new();
    if lo > zero {
        breakpoints.push(lo.clone());
        pieces.push(Polynomial::zero());
    }
    breakpoints.push(hi.clone());
    pieces.push(on_support);
    if hi < one {
        breakpoints.push(one);
        pieces.push(Polynomial::zero());
    }
    PiecewisePolynomial::new(breakpoints, pieces).expect("valid support partition")
}

/// The Hermite wavelet `psi_{n,m}` on [0, 1] as a piecewise polynomial.
pub fn hermite_wavelet(idx: HermiteWaveletIndex) -> PiecewisePolynomial {
    wavelet_core(idx).with_scale(idx.normalization())
}

/// nu-fold repeated integral of the wavelet from 0 (true integral, with the
/// polynomial tail past the support).
pub fn integrate_wavelet(idx: HermiteWaveletIndex, nu: u32) -> PiecewisePolynomial {
    assert!(nu >= 1, "integration order must be >= 1");
    hermite_wavelet(idx).repeated_integral(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational_from_f64;
    use num::ToPrimitive;

    const PI_NEG_QUARTER: f64 = 0.751_125_544_464_942_5; // pi^(-1/4)

    #[test]
    fn first_hermite_polynomials() {
        assert_eq!(hermite_polynomial(0), Polynomial::from_integers(&[1]));
        assert_eq!(hermite_polynomial(1), Polynomial::from_integers(&[0, 2]));
        let h2 = hermite_polynomial(2);
        assert_eq!(h2, Polynomial::from_integers(&[-2, 0, 4]));
        assert_eq!(h2.eval(1.0), 2.0);
    }

    #[test]
    fn degree_and_leading_coefficient() {
        for m in 0..=12u32 {
            let h = hermite_polynomial(m);
            assert_eq!(h.degree(), Some(m as usize));
            assert_eq!(*h.leading_coeff().unwrap(), rational(1i64 << m));
        }
    }

    #[test]
    fn recurrence_holds_at_random_points() {
        // H_{m+1}(t) = 2t H_m(t) - 2m H_{m-1}(t) to 1e-10 relative
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        for m in 1..=12u32 {
            let hm1 = hermite_polynomial(m + 1);
            let hm = hermite_polynomial(m);
            let hm0 = hermite_polynomial(m - 1);
            for _ in 0..100 {
                let t = next();
                let lhs = hm1.eval(t);
                let rhs = 2.0 * t * hm.eval(t) - 2.0 * m as f64 * hm0.eval(t);
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                assert!((lhs - rhs).abs() <= 1e-10 * scale, "m={m} t={t}");
            }
        }
    }

    #[test]
    fn derivative_identity_exact_coefficients() {
        // d/dt H_{m+1} = 2(m+1) H_m, exactly
        for m in 0..=12u32 {
            let lhs = hermite_polynomial(m + 1).derivative();
            let rhs = hermite_polynomial(m).scale(&rational(2 * (m as i64 + 1)));
            assert_eq!(lhs, rhs, "m={m}");
        }
    }

    #[test]
    fn weighted_orthogonality_by_quadrature() {
        // integral of H_1 H_2 e^{-t^2} over [-4, 4] vanishes
        let h1 = hermite_polynomial(1);
        let h2 = hermite_polynomial(2);
        let f = |t: f64| h1.eval(t) * h2.eval(t) * (-t * t).exp();
        let n = 4000;
        let h = 8.0 / n as f64;
        let mut s = f(-4.0) + f(4.0);
        for i in 1..n {
            let t = -4.0 + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(t);
        }
        let integral = s * h / 3.0;
        assert!(integral.abs() < 1e-6, "got {integral}");
    }

    #[test]
    fn base_wavelet_is_constant() {
        let idx = HermiteWaveletIndex::new(1, 1, 0).unwrap();
        let psi = hermite_wavelet(idx);
        for t in [0.0, 0.3, 0.5, 0.99] {
            assert!((psi.eval(t) - PI_NEG_QUARTER).abs() < 1e-15);
        }
    }

    #[test]
    fn odd_wavelet_vanishes_at_midpoint() {
        let idx = HermiteWaveletIndex::new(1, 1, 1).unwrap();
        assert_eq!(hermite_wavelet(idx).eval(0.5), 0.0);
    }

    #[test]
    fn quadratic_wavelet_by_direct_substitution() {
        // independent oracle: scaled H_2(2t-1) = pi^{-1/4} (4u^2 - 2), u = 2t-1
        let idx = HermiteWaveletIndex::new(1, 1, 2).unwrap();
        let psi = hermite_wavelet(idx);
        let t = 0.75;
        let u = 2.0 * t - 1.0;
        let expected = PI_NEG_QUARTER * (4.0 * u * u - 2.0);
        assert!((psi.eval(t) - expected).abs() < 1e-15);
        assert!((psi.eval(t) + PI_NEG_QUARTER).abs() < 1e-15);
    }

    #[test]
    fn integral_of_constant_wavelet() {
        let idx = HermiteWaveletIndex::new(1, 1, 0).unwrap();
        let j1 = integrate_wavelet(idx, 1);
        for t in [0.0, 0.25, 0.7, 1.0] {
            assert!((j1.eval(t) - PI_NEG_QUARTER * t).abs() < 1e-15);
        }
        let j2 = integrate_wavelet(idx, 2);
        assert!((j2.eval(1.0) - PI_NEG_QUARTER / 2.0).abs() < 1e-15);
    }

    #[test]
    fn double_integral_matches_quadrature_oracle() {
        // J^2 psi(1) = integral_0^1 (1-s) psi(s) ds by adaptive Simpson
        let idx = HermiteWaveletIndex::new(1, 1, 3).unwrap();
        let psi = hermite_wavelet(idx);
        let f = |s: f64| (1.0 - s) * psi.eval(s);
        fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
        }
        fn adapt(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, eps: f64) -> f64 {
            let m = 0.5 * (a + b);
            let left = simpson(f, a, m);
            let right = simpson(f, m, b);
            if (left + right - whole).abs() <= 15.0 * eps {
                left + right + (left + right - whole) / 15.0
            } else {
                adapt(f, a, m, left, eps / 2.0) + adapt(f, m, b, right, eps / 2.0)
            }
        }
        let oracle = adapt(&f, 0.0, 1.0, simpson(&f, 0.0, 1.0), 1e-14);
        let j2 = integrate_wavelet(idx, 2);
        assert!((j2.eval(1.0) - oracle).abs() < 1e-12, "{} vs {}", j2.eval(1.0), oracle);
        // frozen value: 6/5 * pi^(-1/4)
        assert!((j2.eval(1.0) - 0.901_350_653_357_931).abs() < 1e-12);
    }

    #[test]
    fn first_integral_differentiates_back() {
        for m in 0..5u32 {
            let idx = HermiteWaveletIndex::new(1, 1, m).unwrap();
            let psi = hermite_wavelet(idx);
            let j1 = integrate_wavelet(idx, 1);
            let h = 1e-6;
            for t in [0.1, 0.35, 0.6, 0.85] {
                let num = (j1.eval(t + h) - j1.eval(t - h)) / (2.0 * h);
                assert!((num - psi.eval(t)).abs() < 1e-8, "m={m} t={t}");
            }
        }
    }

    #[test]
    fn repeated_integral_composes_exactly() {
        // J^2 psi equals J^1(J^1 psi) at the coefficient level
        for m in 0..6u32 {
            let idx = HermiteWaveletIndex::new(1, 1, m).unwrap();
            let j2 = integrate_wavelet(idx, 2);
            let j1j1 = integrate_wavelet(idx, 1).repeated_integral(1);
            assert!(j2.coefficients_equal(&j1j1), "m={m}");
        }
        // and for a k=2 wavelet with a genuine zero head and tail
        let idx = HermiteWaveletIndex::new(2, 2, 3).unwrap();
        let j2 = integrate_wavelet(idx, 2);
        assert!(j2.coefficients_equal(&integrate_wavelet(idx, 1).repeated_integral(1)));
    }

    #[test]
    fn integral_tail_is_polynomial_not_truncated() {
        // k=2, n=1: support [0, 1/2); past it J^1 is the constant
        // integral over the support and J^2 grows linearly
        let idx = HermiteWaveletIndex::new(2, 1, 0).unwrap();
        let j1 = integrate_wavelet(idx, 1);
        let at_half = j1.eval(0.5);
        assert!(at_half > 0.0);
        assert!((j1.eval(0.75) - at_half).abs() < 1e-15);
        assert!((j1.eval(1.0) - at_half).abs() < 1e-15);
        let j2 = integrate_wavelet(idx, 2);
        let expected = j2.eval(0.5) + 0.5 * at_half;
        assert!((j2.eval(1.0) - expected).abs() < 1e-14);
    }

    #[test]
    fn continuity_at_support_endpoints() {
        let idx = HermiteWaveletIndex::new(2, 2, 2).unwrap();
        let (lo, hi) = idx.support();
        let lo_f = lo.to_f64().unwrap();
        let hi_f = hi.to_f64().unwrap();
        for nu in 1..=2u32 {
            let j = integrate_wavelet(idx, nu);
            for b in [lo_f, hi_f] {
                let eps = 1e-9;
                let jump = (j.eval(b + eps) - j.eval(b - eps)).abs();
                assert!(jump < 1e-7, "nu={nu} b={b} jump={jump}");
            }
        }
        // exact: value at support ends from both neighbouring pieces
        let j1 = integrate_wavelet(idx, 1);
        let left_piece = &j1.pieces()[0];
        let mid_piece = &j1.pieces()[1];
        assert_eq!(
            left_piece.eval_rational(&lo),
            mid_piece.eval_rational(&lo)
        );
        let _ = rational_from_f64(0.0);
    }

    #[test]
    fn index_validation() {
        assert!(HermiteWaveletIndex::new(0, 1, 0).is_err());
        assert!(HermiteWaveletIndex::new(1, 2, 0).is_err());
        assert!(HermiteWaveletIndex::new(2, 2, 5).is_ok());
    }
}
