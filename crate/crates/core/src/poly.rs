//! Exact polynomial arithmetic and piecewise polynomials on an interval.
//!
//! Coefficients are kept as arbitrary-precision rationals so that basis
//! construction, repeated integration and the operational matrices are exact;
//! rounding happens once, at evaluation time. A [`PiecewisePolynomial`] may
//! additionally carry a single floating-point `scale` factor for families
//! whose normalization constant is irrational (the scale multiplies every
//! piece at evaluation and commutes with integration, so coefficient-level
//! identities remain exact).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Shorthand for an exact rational from an integer.
pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact rational p/q.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact rational value of a finite f64 (every finite f64 is rational).
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Dense univariate polynomial with exact rational coefficients, ascending
/// powers. Canonical form: no trailing zero coefficient unless the
/// polynomial is identically zero (represented by an empty coefficient list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of t^k (zero when k exceeds the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Horner evaluation in exact arithmetic.
    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Evaluate at a float, exactly, rounding once at the end.
    pub fn eval(&self, t: f64) -> f64 {
        self.eval_rational(&rational_from_f64(t))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// d/dt, exact at the coefficient level.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rational(k as i64))
            .collect();
        Polynomial::new(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / rational(k as i64 + 1));
        }
        Polynomial::new(coeffs)
    }

    /// Substitute t -> a*t + b, exactly.
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> Polynomial {
        let inner = Polynomial::new(vec![b.clone(), a.clone()]);
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&Polynomial::constant(c.clone()));
        }
        acc
    }

    /// Definite integral over [lo, hi] in exact arithmetic.
    pub fn integral_over(&self, lo: &BigRational, hi: &BigRational) -> BigRational {
        let anti = self.antiderivative();
        anti.eval_rational(hi) - anti.eval_rational(lo)
    }
}

/// Polynomial on each interval of a breakpoint partition, with an optional
/// scalar multiplier applied at evaluation. Piece `j` covers
/// `[breakpoints[j], breakpoints[j+1])`; the final interval is closed on the
/// right so evaluation is defined on the whole domain.
#[derive(Debug, Clone)]
pub struct PiecewisePolynomial {
    scale: f64,
    breakpoints: Vec<BigRational>,
    pieces: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<BigRational>, pieces: Vec<Polynomial>) -> Result<Self> {
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidIndex(format!(
                "piecewise polynomial needs n+1 breakpoints for n pieces, got {} and {}",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(PiecewisePolynomial {
            scale: 1.0,
            breakpoints,
            pieces,
        })
    }

    /// Attach a scalar multiplier (normalization constant).
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn domain(&self) -> (&BigRational, &BigRational) {
        (
            self.breakpoints.first().unwrap(),
            self.breakpoints.last().unwrap(),
        )
    }

    fn piece_index(&self, t: &BigRational) -> usize {
        // last interval is right-closed; clamp outside the domain
        let n = self.pieces.len();
        if *t >= *self.breakpoints.last().unwrap() {
            return n - 1;
        }
        match self
            .breakpoints
            .binary_search_by(|b| b.partial_cmp(t).unwrap())
        {
            Ok(j) => j.min(n - 1),
            Err(0) => 0,
            Err(j) => j - 1,
        }
    }

    /// Exact evaluation of the rational core (ignores `scale`).
    pub fn eval_core(&self, t: &BigRational) -> BigRational {
        self.pieces[self.piece_index(t)].eval_rational(t)
    }

    /// Evaluate at a float: exact rational core, one rounding, times scale.
    pub fn eval(&self, t: f64) -> f64 {
        let tr = rational_from_f64(t);
        self.scale * self.eval_core(&tr).to_f64().unwrap_or(f64::NAN)
    }

    /// Piecewise derivative (interior to pieces).
    pub fn derivative(&self) -> PiecewisePolynomial {
        PiecewisePolynomial {
            scale: self.scale,
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(Polynomial::derivative).collect(),
        }
    }

    /// Antiderivative vanishing at the left end of the domain, continuous
    /// across breakpoints. Repeated application yields the true repeated
    /// integral, including the polynomial tails past a compactly supported
    /// piece.
    pub fn antiderivative(&self) -> PiecewisePolynomial {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut carried = BigRational::zero();
        for (j, p) in self.pieces.iter().enumerate() {
            let anti = p.antiderivative();
            // constant chosen so the piece takes the carried value at its
            // left breakpoint
            let left = &self.breakpoints[j];
            let c = &carried - anti.eval_rational(left);
            let piece = anti.add(&Polynomial::constant(c));
            carried = piece.eval_rational(&self.breakpoints[j + 1]);
            pieces.push(piece);
        }
        PiecewisePolynomial {
            scale: self.scale,
            breakpoints: self.breakpoints.clone(),
            pieces,
        }
    }

    /// nu-fold repeated integral from the left end of the domain.
    pub fn repeated_integral(&self, nu: u32) -> PiecewisePolynomial {
        let mut out = self.clone();
        for _ in 0..nu {
            out = out.antiderivative();
        }
        out
    }

    /// Pointwise product; breakpoints are merged. Scales multiply.
    pub fn product(&self, other: &PiecewisePolynomial) -> PiecewisePolynomial {
        let mut merged: Vec<BigRational> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        merged.sort();
        merged.dedup();
        let mut pieces = Vec::with_capacity(merged.len() - 1);
        for w in merged.windows(2) {
            let a = self.pieces[self.piece_index(&w[0])].clone();
            let b = other.pieces[other.piece_index(&w[0])].clone();
            pieces.push(a.mul(&b));
        }
        PiecewisePolynomial {
            scale: self.scale * other.scale,
            breakpoints: merged,
            pieces,
        }
    }

    /// Exact integral of the rational core over the whole domain (the caller
    /// multiplies by `scale` if needed).
    pub fn integral_core(&self) -> BigRational {
        let mut total = BigRational::zero();
        for (j, p) in self.pieces.iter().enumerate() {
            total += p.integral_over(&self.breakpoints[j], &self.breakpoints[j + 1]);
        }
        total
    }

    /// True when core coefficients and breakpoints agree exactly and the
    /// scales are bit-identical.
    pub fn coefficients_equal(&self, other: &PiecewisePolynomial) -> bool {
        self.scale.to_bits() == other.scale.to_bits()
            && self.breakpoints == other.breakpoints
            && self.pieces == other.pieces
    }
}

/// Convenience: |r| as f64, used by tests comparing exact quantities.
pub fn rational_abs_f64(r: &BigRational) -> f64 {
    r.abs().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let p = Polynomial::new(vec![rational(1), rational(2), rational(0), rational(0)]);
        assert_eq!(p.degree(), Some(1));
        assert!(Polynomial::new(vec![rational(0)]).is_zero());
    }

    #[test]
    fn derivative_then_antiderivative_roundtrips() {
        let p = Polynomial::from_integers(&[3, -2, 5, 7]);
        let back = p.derivative().antiderivative();
        // antiderivative drops the constant term
        assert_eq!(back.coeff(0), rational(0));
        for k in 1..4 {
            assert_eq!(back.coeff(k), p.coeff(k));
        }
    }

    #[test]
    fn compose_affine_matches_direct_evaluation() {
        let p = Polynomial::from_integers(&[1, 0, -3, 2]);
        let q = p.compose_affine(&rational(2), &rational(-1));
        for t in [-2.0, -0.5, 0.0, 0.25, 1.0, 3.0] {
            let direct = p.eval(2.0 * t - 1.0);
            assert!((q.eval(t) - direct).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn piecewise_antiderivative_is_continuous() {
        // step function: 1 on [0, 1/2), -1 on [1/2, 1]
        let pw = PiecewisePolynomial::new(
            vec![rational(0), ratio(1, 2), rational(1)],
            vec![Polynomial::from_integers(&[1]), Polynomial::from_integers(&[-1])],
        )
        .unwrap();
        let j1 = pw.antiderivative();
        assert_eq!(j1.eval_core(&ratio(1, 2)), ratio(1, 2));
        assert_eq!(j1.eval_core(&rational(1)), rational(0));
        // hat function peaks at the midpoint
        assert_eq!(j1.eval_core(&ratio(1, 4)), ratio(1, 4));
        assert_eq!(j1.eval_core(&ratio(3, 4)), ratio(1, 4));
    }

    #[test]
    fn product_merges_breakpoints() {
        let a = PiecewisePolynomial::new(
            vec![rational(0), ratio(1, 2), rational(1)],
            vec![Polynomial::from_integers(&[1]), Polynomial::from_integers(&[-1])],
        )
        .unwrap();
        let b = PiecewisePolynomial::new(
            vec![rational(0), ratio(1, 4), ratio(1, 2), rational(1)],
            vec![
                Polynomial::from_integers(&[1]),
                Polynomial::from_integers(&[-1]),
                Polynomial::zero(),
            ],
        )
        .unwrap();
        let prod = a.product(&b);
        assert_eq!(prod.integral_core(), rational(0));
    }

    #[test]
    fn evaluation_clamps_at_domain_ends() {
        let pw = PiecewisePolynomial::new(
            vec![rational(0), rational(1)],
            vec![Polynomial::from_integers(&[0, 1])],
        )
        .unwrap();
        assert_eq!(pw.eval(1.0), 1.0);
        assert_eq!(pw.eval(0.0), 0.0);
    }
}
