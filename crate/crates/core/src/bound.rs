//! Extremal machinery: the closed-form maximum
//! `Y(A, B, C) = max_{|z| ≤ 1} |A + Bz + Cz²| + 1 − |z|²`, a brute-force disk
//! oracle for it, the per-class reductions to `(A, B, C)`, the resulting bound
//! curves in `τ₁`, and a global grid search over the parameter domain.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caratheodory::CaratheodoryPoint;
use crate::error::{invalid, Result};
use crate::log_hankel::{h21_from_tau, tau_decomposition};
use crate::lune::{convex_extremal_tau1, ClassId};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl YArgs {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }
}

/// Which piece of the closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum YBranch {
    /// `AC ≥ 0`, `|B| ≥ 2(1 − |C|)`: `|A| + |B| + |C|`
    CaseIFirst,
    /// `AC ≥ 0`, `|B| < 2(1 − |C|)`: `1 + |A| + B²/(4(1 − |C|))`
    CaseISecond,
    /// `AC < 0`: `1 − |A| + B²/(4(1 − |C|))`
    CaseIIFirst,
    /// `AC < 0`: `1 + |A| + B²/(4(1 + |C|))`
    CaseIISecond,
    /// `R = |A| + |B| − |C|`
    RFirst,
    /// `R = −|A| + |B| + |C|`
    RSecond,
    /// `R = (|C| + |A|)√(1 − B²/(4AC))`
    RThird,
}

impl YBranch {
    pub const ALL: [YBranch; 7] = [
        YBranch::CaseIFirst,
        YBranch::CaseISecond,
        YBranch::CaseIIFirst,
        YBranch::CaseIISecond,
        YBranch::RFirst,
        YBranch::RSecond,
        YBranch::RThird,
    ];

    pub fn label(self) -> &'static str {
        match self {
            YBranch::CaseIFirst => "case-i-first",
            YBranch::CaseISecond => "case-i-second",
            YBranch::CaseIIFirst => "case-ii-first",
            YBranch::CaseIISecond => "case-ii-second",
            YBranch::RFirst => "r-first",
            YBranch::RSecond => "r-second",
            YBranch::RThird => "r-third",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for YBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YValue {
    pub value: f64,
    pub branch: YBranch,
}

/// Closed-form `Y(A, B, C)`. Conditions are tested in the listed order, so a
/// point on a seam takes the first branch whose condition holds.
pub fn y_closed(args: &YArgs) -> YValue {
    let YArgs { a, b, c } = *args;
    let (aa, ab, ac) = (a.abs(), b.abs(), c.abs());
    let b2 = b * b;
    let pick = |value, branch| YValue { value, branch };
    if a * c >= 0.0 {
        if ab >= 2.0 * (1.0 - ac) {
            return pick(aa + ab + ac, YBranch::CaseIFirst);
        }
        return pick(1.0 + aa + b2 / (4.0 * (1.0 - ac)), YBranch::CaseISecond);
    }
    // AC < 0, so both A and C are nonzero
    let k = -4.0 * a * c * (1.0 / (c * c) - 1.0);
    if k <= b2 && ab < 2.0 * (1.0 - ac) {
        return pick(1.0 - aa + b2 / (4.0 * (1.0 - ac)), YBranch::CaseIIFirst);
    }
    if b2 < (4.0 * (1.0 + ac).powi(2)).min(k) {
        return pick(1.0 + aa + b2 / (4.0 * (1.0 + ac)), YBranch::CaseIISecond);
    }
    if ac * (ab + 4.0 * aa) <= (a * b).abs() {
        return pick(aa + ab - ac, YBranch::RFirst);
    }
    if (a * b).abs() <= ac * (ab - 4.0 * aa) {
        return pick(-aa + ab + ac, YBranch::RSecond);
    }
    pick((ac + aa) * (1.0 - b2 / (4.0 * a * c)).sqrt(), YBranch::RThird)
}

pub const DEFAULT_ORACLE_RADIAL: usize = 64;
pub const DEFAULT_ORACLE_ANGULAR: usize = 256;
/// Coarse local maxima refined by the oracle.
const ORACLE_CANDIDATES: usize = 6;
/// Fine points per axis in a refinement cell (cell shrunk 10×).
const ORACLE_FINE: usize = 21;

#[inline]
fn y_objective(args: &YArgs, z: Complex64, r2: f64) -> f64 {
    (args.a + z * (args.b + z * args.c)).norm() + 1.0 - r2
}

/// Brute-force `Y(A, B, C)`: maximum over a uniform polar grid of the closed
/// disk (radii `i/radial_steps`, including `r = 1`), then one refinement pass
/// with a 10× finer grid around each of the best coarse local maxima.
pub fn y_oracle(args: &YArgs, radial_steps: usize, angular_steps: usize) -> Result<f64> {
    if radial_steps < 64 || angular_steps < 64 {
        return invalid("the disk oracle needs at least 64 radial and 64 angular steps");
    }
    let (nr, nt) = (radial_steps, angular_steps);
    let hr = 1.0 / nr as f64;
    let ht = TAU / nt as f64;
    let units: Vec<Complex64> = (0..nt).map(|j| Complex64::from_polar(1.0, j as f64 * ht)).collect();
    let mut grid = vec![0.0; (nr + 1) * nt];
    for i in 0..=nr {
        let r = i as f64 * hr;
        for (j, u) in units.iter().enumerate() {
            grid[i * nt + j] = y_objective(args, u * r, r * r);
        }
    }
    let at = |i: usize, j: usize| grid[i * nt + j];
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..=nr {
        for j in 0..nt {
            let v = at(i, j);
            let (jl, jr) = ((j + nt - 1) % nt, (j + 1) % nt);
            let mut is_peak = v >= at(i, jl) && v >= at(i, jr);
            if i > 0 {
                is_peak &= v >= at(i - 1, j);
            }
            if i < nr {
                is_peak &= v >= at(i + 1, j);
            }
            if is_peak {
                candidates.push((v, i, j));
            }
        }
    }
    candidates.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    candidates.truncate(ORACLE_CANDIDATES);

    let mut best = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let half = (ORACLE_FINE / 2) as f64;
    for &(_, i, j) in &candidates {
        let (r0, t0) = (i as f64 * hr, j as f64 * ht);
        for p in 0..ORACLE_FINE {
            let r = (r0 + (p as f64 - half) * hr / 10.0).clamp(0.0, 1.0);
            for q in 0..ORACLE_FINE {
                let t = t0 + (q as f64 - half) * ht / 10.0;
                best = best.max(y_objective(args, Complex64::from_polar(r, t), r * r));
            }
        }
    }
    Ok(best)
}

/// `(A, B, C)` such that, for `τ₁ ∈ (0, 1)`, the `τ₃`-free part of `H₂,₁`
/// equals `prefactor(τ₁)·(A + Bτ₂ + Cτ₂²)`.
pub fn abc_for_class(tau1: f64, class: ClassId) -> Result<YArgs> {
    if !(tau1 > 0.0 && tau1 < 1.0) {
        return invalid(format!("tau1 = {tau1} must lie in the open interval (0, 1)"));
    }
    let t2 = tau1 * tau1;
    Ok(match class {
        ClassId::LuneStarlike => YArgs::new(
            -3.0 * tau1.powi(3) / (16.0 * (1.0 - t2)),
            tau1 / 4.0,
            -(3.0 + t2) / (4.0 * tau1),
        ),
        ClassId::LuneConvex => YArgs::new(
            -tau1.powi(3) / (8.0 * (1.0 - t2)),
            tau1 / 2.0,
            -(2.0 + t2) / (3.0 * tau1),
        ),
    })
}

/// `τ₁(1 − τ₁²)/12` (starlike) or `τ₁(1 − τ₁²)/96` (convex).
pub fn prefactor(tau1: f64, class: ClassId) -> f64 {
    let base = tau1 * (1.0 - tau1 * tau1);
    match class {
        ClassId::LuneStarlike => base / 12.0,
        ClassId::LuneConvex => base / 96.0,
    }
}

/// Upper bound for `|H₂,₁|` at fixed `τ₁`:
/// `(12 − 4τ₁² − 5τ₁⁴)/192` or `(16 + 4τ₁² − 17τ₁⁴)/2304`.
pub fn bound_curve(tau1: f64, class: ClassId) -> Result<f64> {
    if !(0.0..=1.0).contains(&tau1) {
        return invalid(format!("tau1 = {tau1} is outside [0, 1]"));
    }
    let t2 = tau1 * tau1;
    Ok(match class {
        ClassId::LuneStarlike => (12.0 - 4.0 * t2 - 5.0 * t2 * t2) / 192.0,
        ClassId::LuneConvex => (16.0 + 4.0 * t2 - 17.0 * t2 * t2) / 2304.0,
    })
}

/// The sharp constant: `1/16` or `23/3264`.
pub fn theoretical_bound(class: ClassId) -> f64 {
    match class {
        ClassId::LuneStarlike => 1.0 / 16.0,
        ClassId::LuneConvex => 23.0 / 3264.0,
    }
}

/// Where the bound curve attains its maximum on `[0, 1]`.
pub fn bound_curve_argmax(class: ClassId) -> f64 {
    match class {
        ClassId::LuneStarlike => 0.0,
        ClassId::LuneConvex => convex_extremal_tau1(),
    }
}

/// Maximum of [`bound_curve`] over `[lo, hi] ⊆ [0, 1]`. Both curves are
/// unimodal in `τ₁`, so the maximum sits at the peak or an endpoint.
pub fn bound_curve_max(class: ClassId, lo: f64, hi: f64) -> Result<f64> {
    let peak = bound_curve_argmax(class).clamp(lo, hi);
    Ok(bound_curve(lo, class)?
        .max(bound_curve(hi, class)?)
        .max(bound_curve(peak, class)?))
}

/// `max_{|τ₃| ≤ 1} |H₂,₁|` at fixed `(τ₁, τ₂)`: the functional is affine in
/// `τ₃` with a non-negative weight, so the maximum is `|rest| + weight`.
pub fn tau3_eliminated(tau1: f64, tau2: Complex64, class: ClassId) -> f64 {
    let (rest, weight) = tau_decomposition(tau1, tau2, class);
    rest.norm() + weight
}

/// The unimodular `τ₃` aligned with the `τ₃`-free part.
pub fn optimal_tau3(tau1: f64, tau2: Complex64, class: ClassId) -> Complex64 {
    let (rest, _) = tau_decomposition(tau1, tau2, class);
    if rest.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        rest / rest.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub tau1_steps: usize,
    pub tau2_radial: usize,
    pub tau2_angular: usize,
    pub refine_depth: usize,
    /// Closed `τ₁` interval searched; `[0, 1]` for the full domain.
    pub tau1_range: (f64, f64),
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            tau1_steps: 200,
            tau2_radial: 50,
            tau2_angular: 256,
            refine_depth: 6,
            tau1_range: (0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridStats {
    pub tau1_steps: usize,
    pub tau2_radial: usize,
    pub tau2_angular: usize,
    pub refine_depth: usize,
    pub tau1_range: (f64, f64),
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub class: ClassId,
    pub sup_found: f64,
    pub argmax: CaratheodoryPoint,
    /// `H₂,₁` evaluated directly at `argmax`.
    pub attained: Complex64,
    pub theoretical_bound: f64,
    pub gap: f64,
    pub within_bound: bool,
    pub grid_stats: GridStats,
    pub branch_trace: String,
}

/// Tolerance on `sup_found ≤ theoretical_bound`.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    tau1: f64,
    r: f64,
    theta: f64,
}

/// Maximizes `|H₂,₁(τ)|` over `τ₁ ∈ tau1_range`, `|τ₂| ≤ 1`, `|τ₃| ≤ 1`.
///
/// `τ₃` is eliminated analytically; `(τ₁, |τ₂|, arg τ₂)` are scanned on a
/// uniform grid, followed by `refine_depth` rounds of a local 9³ grid whose
/// spacing shrinks 4× per round. Each round keeps the incumbent unless it is
/// strictly beaten, so `sup_found` never decreases with depth.
pub fn global_search(class: ClassId, config: &SearchConfig) -> Result<SearchReport> {
    let (lo, hi) = config.tau1_range;
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
        return invalid(format!("tau1 range [{lo}, {hi}] is not a subinterval of [0, 1]"));
    }
    if config.tau1_steps < 1 || config.tau2_radial < 1 || config.tau2_angular < 2 {
        return invalid("grid needs tau1_steps ≥ 1, tau2_radial ≥ 1, tau2_angular ≥ 2");
    }
    let (n1, nr, nt) = (config.tau1_steps, config.tau2_radial, config.tau2_angular);
    let h1 = (hi - lo) / n1 as f64;
    let hr = 1.0 / nr as f64;
    let ht = TAU / nt as f64;
    let units: Vec<Complex64> = (0..nt).map(|k| Complex64::from_polar(1.0, k as f64 * ht)).collect();

    // deterministic reduction: larger value wins, ties go to the smaller flat index
    let (value, flat) = (0..=n1)
        .into_par_iter()
        .map(|i| {
            let tau1 = if i == n1 { hi } else { lo + i as f64 * h1 };
            let mut best = (f64::NEG_INFINITY, usize::MAX);
            for j in 0..=nr {
                let r = j as f64 * hr;
                for (k, u) in units.iter().enumerate() {
                    let v = tau3_eliminated(tau1, u * r, class);
                    if v > best.0 {
                        best = (v, (i * (nr + 1) + j) * nt + k);
                    }
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );
    let (i, rem) = (flat / ((nr + 1) * nt), flat % ((nr + 1) * nt));
    let (j, k) = (rem / nt, rem % nt);
    let mut best = Best {
        value,
        tau1: if i == n1 { hi } else { lo + i as f64 * h1 },
        r: j as f64 * hr,
        theta: k as f64 * ht,
    };
    let mut evaluations = (n1 + 1) * (nr + 1) * nt;

    let (mut s1, mut sr, mut st) = (h1, hr, ht);
    for _ in 0..config.refine_depth {
        s1 /= 4.0;
        sr /= 4.0;
        st /= 4.0;
        let center = best;
        for a in -4..=4 {
            let tau1 = (center.tau1 + a as f64 * s1).clamp(lo, hi);
            for b in -4..=4 {
                let r = (center.r + b as f64 * sr).clamp(0.0, 1.0);
                for c in -4..=4 {
                    let theta = center.theta + c as f64 * st;
                    let v = tau3_eliminated(tau1, Complex64::from_polar(r, theta), class);
                    evaluations += 1;
                    if v > best.value {
                        best = Best { value: v, tau1, r, theta };
                    }
                }
            }
        }
    }

    let tau2 = Complex64::from_polar(best.r, best.theta);
    let tau3 = optimal_tau3(best.tau1, tau2, class);
    let argmax = CaratheodoryPoint::new(best.tau1, tau2, tau3)?;
    let attained = h21_from_tau(&argmax, class).value;
    let bound = bound_curve_max(class, lo, hi)?;
    let branch_trace = match abc_for_class(argmax.tau1(), class) {
        Ok(args) => y_closed(&args).branch.label().to_string(),
        Err(_) if argmax.tau1() == 0.0 => "endpoint tau1 = 0 (direct evaluation)".to_string(),
        Err(_) => "endpoint tau1 = 1 (direct evaluation)".to_string(),
    };
    Ok(SearchReport {
        class,
        sup_found: best.value,
        argmax,
        attained,
        theoretical_bound: bound,
        gap: bound - best.value,
        within_bound: best.value <= bound + BOUND_SLACK,
        grid_stats: GridStats {
            tau1_steps: n1,
            tau2_radial: nr,
            tau2_angular: nt,
            refine_depth: config.refine_depth,
            tau1_range: config.tau1_range,
            evaluations,
        },
        branch_trace,
    })
}

/// Counts which closed-form branch fires for class-generated `(A, B, C)` on a
/// uniform interior grid of `τ₁`.
pub fn class_branch_coverage(class: ClassId, points: usize) -> [usize; 7] {
    let mut counts = [0; 7];
    for i in 1..=points {
        let tau1 = i as f64 / (points + 1) as f64;
        let args = abc_for_class(tau1, class).expect("interior tau1");
        counts[y_closed(&args).branch.index()] += 1;
    }
    counts
}
