//! Truncated power series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `c₀ … c_N` and stands for
//! `Σ cₖ zᵏ + O(z^{N+1})`. Every coefficient up to `N` is exact up to
//! floating-point round-off; binary operations carry the smaller order of
//! their operands.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Truncation degree used when a caller does not pick one.
pub const DEFAULT_ORDER: usize = 128;

/// Absolute tolerance for the constant-term preconditions (`a(0) = 0` or `a(0) = 1`).
pub const CONSTANT_TERM_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients past `order`.
    pub fn new(coeffs: impl IntoIterator<Item = Complex64>, order: usize) -> Self {
        let mut coeffs: Vec<Complex64> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, ZERO);
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(std::iter::empty(), order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        Self::new([c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    /// The series `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, ONE, order)
    }

    /// `c·z^degree`; vanishes when `degree > order`.
    pub fn monomial(degree: usize, c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, or `None` past the truncation degree.
    pub fn get(&self, k: usize) -> Option<Complex64> {
        self.coeffs.get(k).copied()
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().copied(), order.min(self.order()))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Largest coefficient modulus over all stored degrees.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise distance to `other` over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b),
            order,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b),
            order,
        )
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = (0..=order).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum());
        Self::new(coeffs, order)
    }

    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let b0 = divisor.constant_term();
        if b0.norm() <= CONSTANT_TERM_TOL {
            return invalid("series division by a divisor with zero constant term");
        }
        let order = self.order().min(divisor.order());
        let b = &divisor.coeffs;
        let mut q = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let acc: Complex64 = (1..=k).map(|j| b[j] * q[k - j]).sum();
            q.push((self.coeffs[k] - acc) / b0);
        }
        Ok(Self { coeffs: q })
    }

    /// `exp(a)` for `a(0) = 0`, from `(exp a)' = a'·exp a`.
    pub fn exp(&self) -> Result<Self> {
        if self.constant_term().norm() > CONSTANT_TERM_TOL {
            return invalid("exp requires a zero constant term");
        }
        let a = &self.coeffs;
        let mut e = Vec::with_capacity(a.len());
        e.push(ONE);
        for n in 1..a.len() {
            let acc: Complex64 = (1..=n).map(|k| a[k] * e[n - k] * k as f64).sum();
            e.push(acc / n as f64);
        }
        Ok(Self { coeffs: e })
    }

    /// `log(a)` for `a(0) = 1`, from `(log a)' = a'/a`.
    pub fn log(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if (a0 - ONE).norm() > CONSTANT_TERM_TOL {
            return invalid("log requires constant term 1");
        }
        let a = &self.coeffs;
        let mut l = Vec::with_capacity(a.len());
        l.push(ZERO);
        for n in 1..a.len() {
            let acc: Complex64 = (1..n).map(|k| l[k] * a[n - k] * k as f64).sum();
            l.push((a[n] - acc / n as f64) / a0);
        }
        Ok(Self { coeffs: l })
    }

    /// Principal square root, `s(0) = +1`, for `a(0) = 1`.
    pub fn sqrt(&self) -> Result<Self> {
        if (self.constant_term() - ONE).norm() > CONSTANT_TERM_TOL {
            return invalid("sqrt requires constant term 1");
        }
        let a = &self.coeffs;
        let s0 = a[0].sqrt();
        let mut s = Vec::with_capacity(a.len());
        s.push(s0);
        for n in 1..a.len() {
            let acc: Complex64 = (1..n).map(|k| s[k] * s[n - k]).sum();
            s.push((a[n] - acc) / (s0 * 2.0));
        }
        Ok(Self { coeffs: s })
    }

    /// `outer ∘ inner`, evaluated by Horner's scheme in the series ring.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.constant_term().norm() > CONSTANT_TERM_TOL {
            return invalid("composition requires an inner series with zero constant term");
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order], order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Antiderivative of `a(x)/x` vanishing at zero: `cₖzᵏ ↦ (cₖ/k)zᵏ`.
    pub fn integrate_quotient(&self) -> Result<Self> {
        if self.constant_term().norm() > CONSTANT_TERM_TOL {
            return invalid("a(x)/x is not a power series unless a(0) = 0");
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k == 0 { ZERO } else { c / k as f64 });
        Ok(Self::new(coeffs, self.order()))
    }

    /// Formal derivative; the result has order `N − 1`.
    pub fn derivative(&self) -> Self {
        let order = self.order().saturating_sub(1);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64);
        Self::new(coeffs, order)
    }

    /// Multiplication by `z`; the order grows by one.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Division by `z` for `a(0) = 0`; the order drops by one.
    pub fn div_z(&self) -> Result<Self> {
        if self.constant_term().norm() > CONSTANT_TERM_TOL {
            return invalid("division by z requires a zero constant term");
        }
        if self.order() == 0 {
            return invalid("division by z needs order at least 1");
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Horner evaluation of the stored polynomial at `|z| < 1`.
    ///
    /// The neglected tail is bounded by [`tail_bound`] when the true
    /// coefficients past `N` are bounded in modulus.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm().is_nan() || z.norm() >= 1.0 {
            return invalid(format!("evaluation point |z| = {} is not inside the unit disk", z.norm()));
        }
        Ok(self.eval_poly(z))
    }

    /// Horner evaluation without the disk check, for callers that sample
    /// points they already know to be admissible.
    pub(crate) fn eval_poly(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }
}

/// Bound `M·r^{N+1}/(1 − r)` on the tail `Σ_{k>N} cₖzᵏ` at `|z| = r` when
/// every `|cₖ| ≤ M`.
pub fn tail_bound(order: usize, radius: f64, coeff_bound: f64) -> f64 {
    if radius >= 1.0 {
        return f64::INFINITY;
    }
    coeff_bound * radius.powi(order as i32 + 1) / (1.0 - radius)
}

/// Largest radius at which [`tail_bound`] stays at or below `tol`.
pub fn confidence_radius(order: usize, coeff_bound: f64, tol: f64) -> f64 {
    if coeff_bound == 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if tail_bound(order, mid, coeff_bound) <= tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(-ONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(coeffs: &[f64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_real(coeffs, order)
    }

    fn assert_coeffs(s: &TruncatedSeries, expected: &[f64], tol: f64) {
        for (k, &e) in expected.iter().enumerate() {
            let got = s.get(k).unwrap();
            assert!(
                (got - c(e)).norm() <= tol,
                "coefficient {k}: got {got}, expected {e}"
            );
        }
    }

    #[test]
    fn add_cancels_and_truncates_to_min_order() {
        let s = &real(&[1.0, 1.0], 4) + &real(&[1.0, -1.0], 4);
        assert_coeffs(&s, &[2.0, 0.0, 0.0, 0.0, 0.0], 0.0);

        let z = TruncatedSeries::identity(4);
        assert_eq!(&z + &TruncatedSeries::zero(4), z);

        let s = &real(&[1.0, 2.0, 3.0], 2) + &real(&[1.0, 1.0], 5);
        assert_eq!(s.order(), 2);
        assert_coeffs(&s, &[2.0, 3.0, 3.0], 0.0);
    }

    #[test]
    fn mul_examples() {
        let s = &real(&[1.0, 1.0], 6) * &real(&[1.0, -1.0], 6);
        assert_coeffs(&s, &[1.0, 0.0, -1.0, 0.0], 0.0);

        let z = TruncatedSeries::identity(6);
        assert_coeffs(&(&z * &z), &[0.0, 0.0, 1.0, 0.0], 0.0);

        let p = real(&[1.0, 1.0, 1.0], 6);
        assert_coeffs(&(&p * &p), &[1.0, 2.0, 3.0, 2.0, 1.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn div_examples() {
        let q = real(&[1.0, 0.0, -1.0], 8).div(&real(&[1.0, -1.0], 8)).unwrap();
        assert_coeffs(&q, &[1.0, 1.0, 0.0, 0.0, 0.0], 1e-15);

        let g = TruncatedSeries::one(8).div(&real(&[1.0, -1.0], 8)).unwrap();
        assert_coeffs(&g, &[1.0; 9], 1e-15);

        let p = real(&[1.0, 0.0, -1.0], 16)
            .div(&real(&[1.0, 0.0, 1.0], 16))
            .unwrap();
        let one = TruncatedSeries::one(16);
        let w = (&p - &one).div(&(&p + &one)).unwrap();
        let mut expected = vec![0.0; 17];
        expected[2] = -1.0;
        assert_coeffs(&w, &expected, 1e-14);
    }

    #[test]
    fn div_rejects_zero_constant_divisor() {
        let err = TruncatedSeries::one(4).div(&TruncatedSeries::identity(4));
        assert!(matches!(err, Err(crate::Error::InvalidInput(_))));
    }

    #[test]
    fn exp_examples() {
        let e = TruncatedSeries::zero(6).exp().unwrap();
        assert_eq!(e, TruncatedSeries::one(6));

        let e = real(&[0.0, 0.0, 0.5, 0.0, 0.125], 4).exp().unwrap();
        assert_coeffs(&e, &[1.0, 0.0, 0.5, 0.0, 0.25], 1e-15);

        assert!(TruncatedSeries::one(3).exp().is_err());
    }

    #[test]
    fn log_examples() {
        assert_eq!(
            TruncatedSeries::one(5).log().unwrap(),
            TruncatedSeries::zero(5)
        );

        let geometric = TruncatedSeries::one(12)
            .div(&real(&[1.0, -1.0], 12))
            .unwrap();
        let l = geometric.log().unwrap();
        let mercator: Vec<f64> = (0..=12)
            .map(|k| if k == 0 { 0.0 } else { 1.0 / k as f64 })
            .collect();
        assert_coeffs(&l, &mercator, 1e-14);

        let plus = real(&[1.0, 1.0], 10);
        let minus = real(&[1.0, -1.0], 10);
        let lhs = (&plus * &minus).log().unwrap();
        let rhs = &plus.log().unwrap() + &minus.log().unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-13);

        assert!(real(&[2.0, 1.0], 3).log().is_err());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(
            TruncatedSeries::one(4).sqrt().unwrap(),
            TruncatedSeries::one(4)
        );

        let s = real(&[1.0, 0.0, 1.0], 6).sqrt().unwrap();
        assert_coeffs(&s, &[1.0, 0.0, 0.5, 0.0, -0.125, 0.0, 0.0625], 1e-15);

        let s = real(&[1.0, 0.0, 0.0, 0.0, 1.0], 8).sqrt().unwrap();
        assert_coeffs(
            &s,
            &[1.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, -0.125],
            1e-15,
        );

        assert!(real(&[4.0, 1.0], 3).sqrt().is_err());
    }

    #[test]
    fn compose_examples() {
        // q(z) = z + sqrt(1 + z²)
        let q = &TruncatedSeries::identity(10) + &real(&[1.0, 0.0, 1.0], 10).sqrt().unwrap();
        let at_zero = q.compose(&TruncatedSeries::zero(10)).unwrap();
        assert_eq!(at_zero, TruncatedSeries::one(10));

        let z2 = TruncatedSeries::monomial(2, ONE, 10);
        let same = z2.compose(&TruncatedSeries::identity(10)).unwrap();
        assert_eq!(same, z2);

        let inner = z2.scale(-ONE);
        let r = q.compose(&inner).unwrap();
        assert_coeffs(
            &r,
            &[1.0, 0.0, -1.0, 0.0, 0.5, 0.0, 0.0, 0.0, -0.125, 0.0, 0.0],
            1e-15,
        );

        assert!(q.compose(&TruncatedSeries::one(10)).is_err());
    }

    #[test]
    fn integrate_quotient_examples() {
        let z = TruncatedSeries::identity(5);
        assert_eq!(z.integrate_quotient().unwrap(), z);

        let z3 = TruncatedSeries::monomial(3, ONE, 5);
        assert_coeffs(
            &z3.integrate_quotient().unwrap(),
            &[0.0, 0.0, 0.0, 1.0 / 3.0, 0.0, 0.0],
            1e-16,
        );

        // z² + (sqrt(1+z⁴) − 1) = z² + z⁴/2 − z⁸/8 + …
        let root = real(&[1.0, 0.0, 0.0, 0.0, 1.0], 12).sqrt().unwrap();
        let a = &(&TruncatedSeries::monomial(2, ONE, 12) + &root) - &TruncatedSeries::one(12);
        let i = a.integrate_quotient().unwrap();
        let mut expected = vec![0.0; 13];
        expected[2] = 0.5;
        expected[4] = 0.125;
        expected[8] = -1.0 / 64.0;
        expected[12] = 1.0 / 192.0;
        assert_coeffs(&i, &expected, 1e-15);

        assert!(TruncatedSeries::one(3).integrate_quotient().is_err());
    }

    #[test]
    fn eval_examples() {
        let s = real(&[1.0, 1.0], 3);
        assert_eq!(s.eval(c(0.0)).unwrap(), c(1.0));

        let g = real(&[1.0; 129], 128);
        assert!((g.eval(c(0.5)).unwrap() - c(2.0)).norm() < 1e-12);

        let z = TruncatedSeries::identity(3);
        let v = z.eval(Complex64::new(0.0, 0.3)).unwrap();
        assert!((v - Complex64::new(0.0, 0.3)).norm() < 1e-16);

        assert!(z.eval(c(1.0)).is_err());
        assert!(z.eval(Complex64::new(0.8, 0.8)).is_err());
    }

    #[test]
    fn tail_bound_matches_geometric_remainder() {
        // 1/(1 − z) with N = 128 at r = 0.9: the exact tail equals the bound.
        let bound = tail_bound(128, 0.9, 1.0);
        let exact = 0.9_f64.powi(129) / 0.1;
        assert!((bound - exact).abs() < 1e-18);
        assert!(bound < 1e-4);

        let r = confidence_radius(8, 1.0, 1e-3);
        assert!(tail_bound(8, r, 1.0) <= 1e-3 && r < 0.6);
        assert!(confidence_radius(128, 1.0, 1e-3) > 0.9);
    }

    #[test]
    fn derivative_and_shifts() {
        let s = real(&[1.0, 2.0, 3.0, 4.0], 3);
        assert_coeffs(&s.derivative(), &[2.0, 6.0, 12.0], 0.0);
        assert_eq!(s.derivative().order(), 2);
        let up = s.mul_z();
        assert_eq!(up.order(), 4);
        assert_eq!(up.div_z().unwrap(), s);
        assert!(s.div_z().is_err());
    }
}
