//! Carathéodory functions `p(z) = 1 + c₁z + c₂z² + …` with `Re p > 0`.
//!
//! With the rotation normalization `c₁ ≥ 0`, the first three coefficients are
//! parameterized by `τ₁ ∈ [0, 1]` and `τ₂, τ₃` in the closed unit disk. On the
//! boundary strata (`τ₁ = 1`, or `|τ₂| = 1`, or `|τ₃| = 1`) the function is
//! unique and given by an explicit rational expression.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::series::{TruncatedSeries, CONSTANT_TERM_TOL};

/// Distance from the unit circle below which a parameter is snapped onto it.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaratheodoryPoint {
    tau1: f64,
    tau2: Complex64,
    tau3: Complex64,
}

/// Which uniqueness stratum a parameter point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum {
    /// `τ₁ = 1`
    Tau1Boundary,
    /// `τ₁ < 1`, `|τ₂| = 1`
    Tau2Boundary,
    /// `τ₁ < 1`, `|τ₂| < 1`, `|τ₃| = 1`
    Tau3Boundary,
    Interior,
}

fn snap_to_disk(tau: Complex64, name: &str) -> Result<Complex64> {
    if !(tau.re.is_finite() && tau.im.is_finite()) {
        return invalid(format!("{name} is not finite"));
    }
    let r = tau.norm();
    if r > 1.0 + BOUNDARY_TOL {
        return invalid(format!("|{name}| = {r} exceeds 1"));
    }
    if (r - 1.0).abs() <= BOUNDARY_TOL {
        return Ok(tau / r);
    }
    Ok(tau)
}

impl CaratheodoryPoint {
    /// Validates `τ₁ ∈ [0, 1]`, `|τ₂|, |τ₃| ≤ 1`. Values within
    /// [`BOUNDARY_TOL`] of a boundary are moved exactly onto it.
    pub fn new(tau1: f64, tau2: Complex64, tau3: Complex64) -> Result<Self> {
        if !(-BOUNDARY_TOL..=1.0 + BOUNDARY_TOL).contains(&tau1) {
            return invalid(format!("tau1 = {tau1} is outside [0, 1]"));
        }
        let tau1 = if tau1 > 1.0 - BOUNDARY_TOL {
            1.0
        } else {
            tau1.max(0.0)
        };
        Ok(Self {
            tau1,
            tau2: snap_to_disk(tau2, "tau2")?,
            tau3: snap_to_disk(tau3, "tau3")?,
        })
    }

    pub fn tau1(&self) -> f64 {
        self.tau1
    }

    pub fn tau2(&self) -> Complex64 {
        self.tau2
    }

    pub fn tau3(&self) -> Complex64 {
        self.tau3
    }

    pub fn stratum(&self) -> Stratum {
        if self.tau1 == 1.0 {
            Stratum::Tau1Boundary
        } else if self.tau2.norm() == 1.0 {
            Stratum::Tau2Boundary
        } else if self.tau3.norm() == 1.0 {
            Stratum::Tau3Boundary
        } else {
            Stratum::Interior
        }
    }
}

/// `c₁, c₂, c₃` of a Carathéodory function; `c₁` is real and non-negative
/// under the rotation normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaratheodoryCoeffs {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl CaratheodoryCoeffs {
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn real(c1: f64, c2: f64, c3: f64) -> Self {
        Self::new(c1.into(), c2.into(), c3.into())
    }

    pub fn max_modulus(&self) -> f64 {
        self.c1.norm().max(self.c2.norm()).max(self.c3.norm())
    }
}

pub fn coeffs_from_params(t: &CaratheodoryPoint) -> CaratheodoryCoeffs {
    let t1 = t.tau1;
    let (t2, t3) = (t.tau2, t.tau3);
    let s = 1.0 - t1 * t1;
    let c1 = Complex64::new(2.0 * t1, 0.0);
    let c2 = 2.0 * t1 * t1 + 2.0 * s * t2;
    let c3 = 2.0 * t1.powi(3) + 4.0 * s * t1 * t2 - 2.0 * s * t1 * t2 * t2
        + 2.0 * s * (1.0 - t2.norm_sqr()) * t3;
    CaratheodoryCoeffs { c1, c2, c3 }
}

/// Expands the unique Carathéodory function of a boundary parameter point.
///
/// Interior points are rejected: the parameterization does not single out a
/// representative there.
pub fn reconstruct_p(t: &CaratheodoryPoint, order: usize) -> Result<TruncatedSeries> {
    let one = Complex64::new(1.0, 0.0);
    let t1 = Complex64::new(t.tau1, 0.0);
    let (t2, t3) = (t.tau2, t.tau3);
    let (num, den): (Vec<Complex64>, Vec<Complex64>) = match t.stratum() {
        Stratum::Tau1Boundary => (vec![one, t1], vec![one, -t1]),
        Stratum::Tau2Boundary => {
            let m = t1.conj() * t2;
            (vec![one, m + t1, t2], vec![one, m - t1, -t2])
        }
        Stratum::Tau3Boundary => {
            let lin = t2.conj() * t3 + t1.conj() * t2;
            let quad = t1.conj() * t3;
            let cross = t1 * t2.conj() * t3;
            (
                vec![one, lin + t1, quad + cross + t2, t3],
                vec![one, lin - t1, quad - cross - t2, -t3],
            )
        }
        Stratum::Interior => {
            return Err(Error::Unsupported(format!(
                "no canonical Carathéodory function for interior point \
                 (tau1 = {}, |tau2| = {}, |tau3| = {})",
                t.tau1,
                t2.norm(),
                t3.norm()
            )))
        }
    };
    TruncatedSeries::new(num, order).div(&TruncatedSeries::new(den, order))
}

/// `w = (p − 1)/(p + 1)`.
pub fn schwarz_from_p(p: &TruncatedSeries) -> Result<TruncatedSeries> {
    let one = Complex64::new(1.0, 0.0);
    if (p.constant_term() - one).norm() > CONSTANT_TERM_TOL {
        return invalid("a Carathéodory function must satisfy p(0) = 1");
    }
    let unit = TruncatedSeries::one(p.order());
    (p - &unit).div(&(p + &unit))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityReport {
    pub passed: bool,
    pub min_real_part: f64,
    pub location: Complex64,
    pub samples: usize,
}

/// Samples `Re p` on circles `|z| = r` and passes when every sample exceeds `−tol`.
pub fn is_caratheodory(
    p: &TruncatedSeries,
    radii: &[f64],
    samples_per_circle: usize,
    tol: f64,
) -> Result<PositivityReport> {
    if (p.constant_term() - Complex64::new(1.0, 0.0)).norm() > CONSTANT_TERM_TOL {
        return invalid("a Carathéodory function must satisfy p(0) = 1");
    }
    if samples_per_circle == 0 {
        return invalid("at least one sample per circle is required");
    }
    let mut min_re = f64::INFINITY;
    let mut location = Complex64::new(0.0, 0.0);
    for &r in radii {
        for k in 0..samples_per_circle {
            let z = Complex64::from_polar(r, TAU * k as f64 / samples_per_circle as f64);
            let re = p.eval(z)?.re;
            if re < min_re {
                min_re = re;
                location = z;
            }
        }
    }
    if radii.is_empty() {
        min_re = 1.0;
    }
    Ok(PositivityReport {
        passed: min_re > -tol,
        min_real_part: min_re,
        location,
        samples: radii.len() * samples_per_circle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn point(t1: f64, t2: Complex64, t3: Complex64) -> CaratheodoryPoint {
        CaratheodoryPoint::new(t1, t2, t3).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn random_disk(rng: &mut ChaCha8Rng) -> Complex64 {
        Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
    }

    #[test]
    fn construction_validates_and_snaps() {
        assert!(CaratheodoryPoint::new(1.2, cx(0.0, 0.0), cx(0.0, 0.0)).is_err());
        assert!(CaratheodoryPoint::new(-0.1, cx(0.0, 0.0), cx(0.0, 0.0)).is_err());
        assert!(CaratheodoryPoint::new(0.5, cx(1.1, 0.0), cx(0.0, 0.0)).is_err());
        assert!(CaratheodoryPoint::new(0.5, cx(0.0, 0.0), cx(0.0, -1.01)).is_err());
        assert!(CaratheodoryPoint::new(f64::NAN, cx(0.0, 0.0), cx(0.0, 0.0)).is_err());

        let t = point(0.3, cx(0.0, 1.0 + 5e-13), cx(0.0, 0.0));
        assert_eq!(t.tau2().norm(), 1.0);
        assert_eq!(t.stratum(), Stratum::Tau2Boundary);
        assert_eq!(point(1.0 - 1e-13, cx(0.0, 0.0), cx(0.0, 0.0)).stratum(), Stratum::Tau1Boundary);
        assert_eq!(point(0.2, cx(0.1, 0.0), cx(0.0, 1.0)).stratum(), Stratum::Tau3Boundary);
        assert_eq!(point(0.2, cx(0.1, 0.0), cx(0.0, 0.5)).stratum(), Stratum::Interior);
    }

    #[test]
    fn coeffs_examples() {
        let c = coeffs_from_params(&point(1.0, cx(0.3, -0.2), cx(-0.5, 0.1)));
        assert!(close(c.c1, cx(2.0, 0.0), 1e-15));
        assert!(close(c.c2, cx(2.0, 0.0), 1e-15));
        assert!(close(c.c3, cx(2.0, 0.0), 1e-15));

        let c = coeffs_from_params(&point(0.0, cx(1.0, 0.0), cx(0.4, 0.4)));
        assert!(close(c.c1, cx(0.0, 0.0), 1e-15));
        assert!(close(c.c2, cx(2.0, 0.0), 1e-15));
        assert!(close(c.c3, cx(0.0, 0.0), 1e-15));

        let c = coeffs_from_params(&point(0.5, cx(0.5, 0.0), cx(0.5, 0.0)));
        assert!(close(c.c1, cx(1.0, 0.0), 1e-15));
        assert!(close(c.c2, cx(1.25, 0.0), 1e-15));
        assert!(close(c.c3, cx(1.375, 0.0), 1e-15));
    }

    #[test]
    fn reconstruct_examples() {
        let p = reconstruct_p(&point(1.0, cx(0.0, 0.0), cx(0.0, 0.0)), 8).unwrap();
        let expected: Vec<f64> = (0..=8).map(|k| if k == 0 { 1.0 } else { 2.0 }).collect();
        assert!(p.max_abs_diff(&TruncatedSeries::from_real(&expected, 8)) < 1e-15);

        let p = reconstruct_p(&point(0.0, cx(1.0, 0.0), cx(0.0, 0.0)), 8).unwrap();
        let expected = [1.0, 0.0, 2.0, 0.0, 2.0, 0.0, 2.0, 0.0, 2.0];
        assert!(p.max_abs_diff(&TruncatedSeries::from_real(&expected, 8)) < 1e-15);

        let p = reconstruct_p(&point(0.0, cx(-1.0, 0.0), cx(0.0, 0.0)), 8).unwrap();
        let expected = [1.0, 0.0, -2.0, 0.0, 2.0, 0.0, -2.0, 0.0, 2.0];
        assert!(p.max_abs_diff(&TruncatedSeries::from_real(&expected, 8)) < 1e-15);
    }

    #[test]
    fn reconstruct_rejects_interior() {
        let err = reconstruct_p(&point(0.4, cx(0.2, 0.1), cx(-0.3, 0.0)), 8);
        assert!(matches!(err, Err(Error::Unsupported(_))));
    }

    #[test]
    fn schwarz_examples() {
        let w = schwarz_from_p(&TruncatedSeries::one(6)).unwrap();
        assert_eq!(w.max_abs_coeff(), 0.0);

        let p = reconstruct_p(&point(1.0, cx(0.0, 0.0), cx(0.0, 0.0)), 10).unwrap();
        let w = schwarz_from_p(&p).unwrap();
        assert!(w.max_abs_diff(&TruncatedSeries::identity(10)) < 1e-14);

        let p = reconstruct_p(&point(0.0, cx(-1.0, 0.0), cx(0.0, 0.0)), 10).unwrap();
        let w = schwarz_from_p(&p).unwrap();
        let minus_z2 = TruncatedSeries::monomial(2, cx(-1.0, 0.0), 10);
        assert!(w.max_abs_diff(&minus_z2) < 1e-14);

        assert!(schwarz_from_p(&TruncatedSeries::from_real(&[2.0], 3)).is_err());
    }

    #[test]
    fn positivity_examples() {
        let p = reconstruct_p(&point(1.0, cx(0.0, 0.0), cx(0.0, 0.0)), 128).unwrap();
        let rep = is_caratheodory(&p, &[0.5, 0.9], 720, 1e-9).unwrap();
        assert!(rep.passed);
        // min of Re (1+z)/(1−z) on |z| = r is (1−r)/(1+r), attained at z = −r
        assert!((rep.min_real_part - 0.1 / 1.9).abs() < 1e-5);

        let bad = TruncatedSeries::from_real(&[1.0, 3.0], 4);
        let rep = is_caratheodory(&bad, &[0.9], 720, 1e-9).unwrap();
        assert!(!rep.passed);
        assert!((rep.min_real_part + 1.7).abs() < 1e-12);
        assert!((rep.location - cx(-0.9, 0.0)).norm() < 1e-12);

        let rep = is_caratheodory(&TruncatedSeries::one(4), &[0.5], 16, 0.0).unwrap();
        assert!(rep.passed && rep.min_real_part == 1.0);
    }

    #[test]
    fn boundary_reconstructions_match_parameterization() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..300 {
            let t = match i % 3 {
                0 => point(1.0, random_disk(&mut rng), random_disk(&mut rng)),
                1 => point(
                    rng.gen_range(0.0..1.0),
                    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU)),
                    random_disk(&mut rng),
                ),
                _ => point(
                    rng.gen_range(0.0..1.0),
                    random_disk(&mut rng) * 0.999,
                    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU)),
                ),
            };
            let p = reconstruct_p(&t, 128).unwrap();
            let c = coeffs_from_params(&t);
            assert!(close(p.get(1).unwrap(), c.c1, 1e-9), "{t:?}");
            assert!(close(p.get(2).unwrap(), c.c2, 1e-9), "{t:?}");
            assert!(close(p.get(3).unwrap(), c.c3, 1e-9), "{t:?}");
            if i % 10 == 0 {
                let rep = is_caratheodory(&p, &[0.5, 0.8, 0.9], 360, 1e-6).unwrap();
                assert!(rep.passed, "{t:?}: {rep:?}");
            }
        }
    }

    #[test]
    fn coefficient_bound_holds_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let t = point(rng.gen(), random_disk(&mut rng), random_disk(&mut rng));
            assert!(coeffs_from_params(&t).max_modulus() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn coefficients_are_lipschitz_in_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let eps = 1e-7;
        for _ in 0..500 {
            let t1 = rng.gen_range(0.0..1.0 - eps);
            let t2 = random_disk(&mut rng) * 0.99;
            let t3 = random_disk(&mut rng) * 0.99;
            let base = coeffs_from_params(&point(t1, t2, t3));
            let moved = coeffs_from_params(&point(t1 + eps, t2 + eps, t3 + cx(0.0, eps)));
            let d = [base.c1 - moved.c1, base.c2 - moved.c2, base.c3 - moved.c3];
            // each partial derivative is bounded by a small constant on the closed domain
            assert!(d.iter().all(|x| x.norm() <= 40.0 * eps));
        }
    }
}
