//! The lune target `q(z) = z + √(1 + z²)` and the two classes built on it.
//!
//! `f` is lune-starlike when `zf'/f ≺ q` and lune-convex when
//! `1 + zf''/f' ≺ q`. The image `q(𝔻)` is the lune `{v : |v² − 1| < 2|v|}`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caratheodory::{reconstruct_p, schwarz_from_p, CaratheodoryCoeffs, CaratheodoryPoint};
use crate::error::{invalid, Error, Result};
use crate::series::{confidence_radius, TruncatedSeries, CONSTANT_TERM_TOL};

/// Sampling radii above this are not trusted at the default truncation order.
pub const MAX_SAMPLING_RADIUS: f64 = 0.9;
pub const DEFAULT_SAMPLES_PER_CIRCLE: usize = 720;
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-3;

/// Scale factor `√(69/68)` in the convex extremal function.
pub fn convex_extremal_scale() -> f64 {
    (69.0_f64 / 68.0).sqrt()
}

/// `τ₁ = √(2/17)`, where the convex bound curve peaks.
pub fn convex_extremal_tau1() -> f64 {
    (2.0_f64 / 17.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassId {
    #[serde(rename = "starlike")]
    LuneStarlike,
    #[serde(rename = "convex")]
    LuneConvex,
}

impl ClassId {
    pub const ALL: [ClassId; 2] = [ClassId::LuneStarlike, ClassId::LuneConvex];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassId::LuneStarlike => "starlike",
            ClassId::LuneConvex => "convex",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "starlike" | "lune-starlike" => Ok(ClassId::LuneStarlike),
            "convex" | "lune-convex" => Ok(ClassId::LuneConvex),
            other => invalid(format!("unknown class `{other}` (expected starlike or convex)")),
        }
    }
}

/// Taylor coefficients `a₂ … a₆` of `f(z) = z + a₂z² + …`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorPrefix {
    pub a2: Complex64,
    pub a3: Complex64,
    pub a4: Complex64,
    pub a5: Option<Complex64>,
    pub a6: Option<Complex64>,
}

impl TaylorPrefix {
    pub fn new(a2: Complex64, a3: Complex64, a4: Complex64) -> Self {
        Self {
            a2,
            a3,
            a4,
            a5: None,
            a6: None,
        }
    }

    pub fn full(coeffs: [Complex64; 5]) -> Self {
        let [a2, a3, a4, a5, a6] = coeffs;
        Self {
            a2,
            a3,
            a4,
            a5: Some(a5),
            a6: Some(a6),
        }
    }

    /// Reads the prefix off a normalized series (`f(0) = 0`, `f'(0) = 1`, order ≥ 4).
    pub fn from_series(f: &TruncatedSeries) -> Result<Self> {
        check_normalized(f)?;
        if f.order() < 4 {
            return invalid(format!("order {} is too small to read a₂…a₄", f.order()));
        }
        let c = |k| f.get(k).unwrap();
        Ok(Self {
            a2: c(2),
            a3: c(3),
            a4: c(4),
            a5: f.get(5),
            a6: f.get(6),
        })
    }

    /// The polynomial `z + a₂z² + …` with whatever coefficients are present.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let zero = Complex64::new(0.0, 0.0);
        let mut coeffs = vec![zero, Complex64::new(1.0, 0.0), self.a2, self.a3, self.a4];
        if let Some(a5) = self.a5 {
            coeffs.push(a5);
            if let Some(a6) = self.a6 {
                coeffs.push(a6);
            }
        }
        TruncatedSeries::new(coeffs, order)
    }

    pub fn max_abs_diff3(&self, other: &Self) -> f64 {
        [self.a2 - other.a2, self.a3 - other.a3, self.a4 - other.a4]
            .iter()
            .map(|d| d.norm())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_normalized(f: &TruncatedSeries) -> Result<()> {
    if f.order() < 1 {
        return invalid("a normalized function needs order at least 1");
    }
    if f.constant_term().norm() > CONSTANT_TERM_TOL {
        return invalid("expected f(0) = 0");
    }
    if (f.get(1).unwrap() - Complex64::new(1.0, 0.0)).norm() > CONSTANT_TERM_TOL {
        return invalid("expected f'(0) = 1");
    }
    Ok(())
}

/// `q(z) = z + √(1 + z²)` with `q(0) = 1`.
pub fn q_series(order: usize) -> TruncatedSeries {
    let one_plus_z2 = TruncatedSeries::from_real(&[1.0, 0.0, 1.0], order);
    let root = one_plus_z2.sqrt().expect("1 + z² has constant term 1");
    &TruncatedSeries::identity(order) + &root
}

pub fn starlike_coeffs_from_c(c: &CaratheodoryCoeffs) -> TaylorPrefix {
    let (c1, c2, c3) = (c.c1, c.c2, c.c3);
    TaylorPrefix::new(
        c1 / 2.0,
        c1 * c1 / 16.0 + c2 / 4.0,
        c1 * c2 / 24.0 + c3 / 6.0 - c1 * c1 * c1 / 96.0,
    )
}

pub fn convex_coeffs_from_c(c: &CaratheodoryCoeffs) -> TaylorPrefix {
    let (c1, c2, c3) = (c.c1, c.c2, c.c3);
    TaylorPrefix::new(
        c1 / 4.0,
        c1 * c1 / 48.0 + c2 / 12.0,
        c1 * c2 / 96.0 + c3 / 24.0 - c1 * c1 * c1 / 384.0,
    )
}

pub fn coeffs_from_c(c: &CaratheodoryCoeffs, class: ClassId) -> TaylorPrefix {
    match class {
        ClassId::LuneStarlike => starlike_coeffs_from_c(c),
        ClassId::LuneConvex => convex_coeffs_from_c(c),
    }
}

/// Solves `z u'/u = P` with `u(0) = 1`, i.e. `m·u_m = Σ_{k=1}^{m} P_k u_{m−k}`.
/// `P(0)` is ignored.
fn solve_log_derivative(p: &TruncatedSeries) -> TruncatedSeries {
    let pc = p.coeffs();
    let mut u = Vec::with_capacity(pc.len());
    u.push(Complex64::new(1.0, 0.0));
    for m in 1..pc.len() {
        let acc: Complex64 = (1..=m).map(|k| pc[k] * u[m - k]).sum();
        u.push(acc / m as f64);
    }
    TruncatedSeries::new(u, p.order())
}

/// Builds the class member `f` whose characteristic function equals `q∘w`.
///
/// Starlike: `zf'/f = q(w)`. Convex: `1 + zf''/f' = q(w)`, solved for `f'`
/// and integrated termwise.
pub fn f_from_schwarz(w: &TruncatedSeries, class: ClassId, order: usize) -> Result<TruncatedSeries> {
    if w.constant_term().norm() > CONSTANT_TERM_TOL {
        return invalid("a Schwarz function must satisfy w(0) = 0");
    }
    if order < 1 {
        return invalid("order must be at least 1");
    }
    let work = order.min(w.order() + 1) - 1;
    let big_q = q_series(work).compose(&w.truncate(work))?;
    // z u'/u = Q − 1 for u = f/z (starlike) or u = f' (convex)
    let u = solve_log_derivative(&big_q);
    Ok(match class {
        ClassId::LuneStarlike => u.mul_z(),
        ClassId::LuneConvex => u.mul_z().integrate_quotient()?,
    })
}

/// `zf'/f` (starlike) or `1 + zf''/f'` (convex) as a series of order `N − 1`.
pub fn characteristic_series(f: &TruncatedSeries, class: ClassId) -> Result<TruncatedSeries> {
    check_normalized(f)?;
    let df = f.derivative();
    match class {
        ClassId::LuneStarlike => df.div(&f.div_z()?),
        ClassId::LuneConvex => {
            // 1 + zf''/f' = (zf')'/f'
            let zdf = df.mul_z();
            zdf.derivative().truncate(df.order()).div(&df)
        }
    }
}

/// `2|v| − |v² − 1|`; non-negative exactly on the closed lune.
pub fn lune_margin(v: Complex64) -> f64 {
    2.0 * v.norm() - (v * v - 1.0).norm()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub class: ClassId,
    pub passed: bool,
    pub worst_margin: f64,
    pub worst_location: Complex64,
    pub radii: Vec<f64>,
    pub samples_per_circle: usize,
    pub tol: f64,
    /// Radius up to which the truncation tail of the characteristic series is
    /// provably below `tol` (taking the largest stored coefficient as the bound).
    pub confidence_radius: f64,
    pub reduced_confidence: bool,
}

/// Samples the lune inequality `|v² − 1| ≤ 2|v| + tol` on circles `|z| = r`.
pub fn membership_check(
    f: &TruncatedSeries,
    class: ClassId,
    radii: &[f64],
    samples_per_circle: usize,
    tol: f64,
) -> Result<MembershipReport> {
    if let Some(&r) = radii
        .iter()
        .find(|&&r| !(0.0..=MAX_SAMPLING_RADIUS).contains(&r))
    {
        return invalid(format!(
            "sampling radius {r} is outside [0, {MAX_SAMPLING_RADIUS}]; the truncation tail is not controlled there"
        ));
    }
    if samples_per_circle == 0 {
        return invalid("at least one sample per circle is required");
    }
    let v = characteristic_series(f, class)?;
    let n = samples_per_circle;
    let (worst_margin, idx) = (0..radii.len() * n)
        .into_par_iter()
        .map(|i| {
            let z = Complex64::from_polar(radii[i / n], TAU * (i % n) as f64 / n as f64);
            (lune_margin(v.eval_poly(z)), i)
        })
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );
    let worst_location = if idx == usize::MAX {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::from_polar(radii[idx / n], TAU * (idx % n) as f64 / n as f64)
    };
    let worst_margin = if radii.is_empty() { 2.0 } else { worst_margin };
    let conf = confidence_radius(v.order(), v.max_abs_coeff(), tol);
    Ok(MembershipReport {
        class,
        passed: worst_margin >= -tol,
        worst_margin,
        worst_location,
        radii: radii.to_vec(),
        samples_per_circle,
        tol,
        confidence_radius: conf,
        reduced_confidence: radii.iter().any(|&r| r > conf),
    })
}

/// `z·exp(∫₀ᶻ (x² + √(1 + x⁴) − 1)/x dx)`, scaled by `scale` inside the exponential.
fn lacunary_exponential(order: usize, scale: f64) -> TruncatedSeries {
    let work = order - 1;
    let z2 = TruncatedSeries::monomial(2, Complex64::new(1.0, 0.0), work);
    let root = TruncatedSeries::from_real(&[1.0, 0.0, 0.0, 0.0, 1.0], work)
        .sqrt()
        .expect("constant term 1");
    let integrand = &(&z2 + &root) - &TruncatedSeries::one(work);
    let inner = integrand
        .integrate_quotient()
        .expect("integrand vanishes at 0")
        .scale(Complex64::new(scale, 0.0));
    inner.exp().expect("zero constant term").mul_z()
}

/// The starlike extremal `g = z + z³/2 + z⁵/4 + …`, with `zg'/g = q(z²)`.
pub fn extremal_g(order: usize) -> Result<TruncatedSeries> {
    if order < 5 {
        return invalid("extremal g needs order at least 5");
    }
    Ok(lacunary_exponential(order, 1.0))
}

/// The pair `(h₀, h)` with `h₀ = z·exp(√(69/68)·∫…)` and `h = ∫₀ᶻ h₀(x)/x dx`.
pub fn extremal_h(order: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    if order < 5 {
        return invalid("extremal h needs order at least 5");
    }
    let h0 = lacunary_exponential(order, convex_extremal_scale());
    let h = h0.integrate_quotient()?;
    Ok((h0, h))
}

/// A convex-class function attaining `|H₂,₁| = 23/3264`: the image of the
/// boundary parameter point `(τ₁, τ₂) = (√(2/17), −1)`, whose Schwarz function
/// is `w(z) = z(τ₁ − z)/(1 − τ₁z)`.
pub fn convex_boundary_extremal(order: usize) -> Result<TruncatedSeries> {
    let t = CaratheodoryPoint::new(
        convex_extremal_tau1(),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
    )?;
    let p = reconstruct_p(&t, order)?;
    f_from_schwarz(&schwarz_from_p(&p)?, ClassId::LuneConvex, order)
}

/// Koebe function `z/(1 − z)² = Σ n zⁿ`.
pub fn koebe(order: usize) -> TruncatedSeries {
    TruncatedSeries::new((0..=order).map(|n| Complex64::new(n as f64, 0.0)), order)
}
