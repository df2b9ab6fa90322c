//! Logarithmic coefficients `γₙ`, defined by `log(f(z)/z) = 2 Σ γₙ zⁿ`, and
//! the Hankel determinant `H₂,₁(F_f/2) = γ₁γ₃ − γ₂²`.
//!
//! The determinant is available in three coordinate systems: Taylor
//! coefficients (through `γ` or the quartic in `a₂, a₃, a₄`), Carathéodory
//! coefficients `c₁, c₂, c₃`, and the parameters `τ₁, τ₂, τ₃`.

use num_complex::Complex64;
use serde::Serialize;

use crate::caratheodory::{CaratheodoryCoeffs, CaratheodoryPoint};
use crate::error::{invalid, Result};
use crate::lune::{check_normalized, ClassId, TaylorPrefix};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogCoeffs {
    pub gamma1: Complex64,
    pub gamma2: Complex64,
    pub gamma3: Complex64,
    pub gamma4: Option<Complex64>,
    pub gamma5: Option<Complex64>,
}

impl LogCoeffs {
    /// `[0, γ₁, …]`, indexed by the power of `z` in `F_f/2`.
    pub fn as_sequence(&self) -> Vec<Complex64> {
        let mut seq = vec![Complex64::new(0.0, 0.0), self.gamma1, self.gamma2, self.gamma3];
        if let Some(g4) = self.gamma4 {
            seq.push(g4);
            if let Some(g5) = self.gamma5 {
                seq.push(g5);
            }
        }
        seq
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let a = self.as_sequence();
        let b = other.as_sequence();
        a.iter()
            .zip(&b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoordinateSystem {
    Taylor,
    CaratheodoryC,
    TauParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HankelValue {
    pub value: Complex64,
    pub class: Option<ClassId>,
    pub coordinates: CoordinateSystem,
}

impl HankelValue {
    pub fn modulus(&self) -> f64 {
        self.value.norm()
    }
}

/// `γₙ = ½·[zⁿ] log(f/z)` for `n = 1…5`.
pub fn log_coeffs_series(f: &TruncatedSeries) -> Result<LogCoeffs> {
    check_normalized(f)?;
    if f.order() < 6 {
        return invalid(format!("order {} is too small for γ₁…γ₅ (need 6)", f.order()));
    }
    let l = f.div_z()?.log()?;
    let g = |n: usize| l.get(n).unwrap() / 2.0;
    Ok(LogCoeffs {
        gamma1: g(1),
        gamma2: g(2),
        gamma3: g(3),
        gamma4: Some(g(4)),
        gamma5: Some(g(5)),
    })
}

/// The closed forms for `γ₁…γ₅` in terms of `a₂…a₆`. `γ₄` needs `a₅` and
/// `γ₅` needs `a₆`; missing inputs leave the corresponding entry empty.
pub fn log_coeffs_closed(a: &TaylorPrefix) -> LogCoeffs {
    let (a2, a3, a4) = (a.a2, a.a3, a.a4);
    let gamma4 = a.a5.map(|a5| {
        0.5 * (a5 - a2 * a4 + a2 * a2 * a3 - 0.5 * a3 * a3 - 0.25 * a2.powi(4))
    });
    let gamma5 = a.a5.zip(a.a6).map(|(a5, a6)| {
        0.5 * (a6 - a2 * a5 - a3 * a4 + a2 * a3 * a3 + a2 * a2 * a4 - a2.powi(3) * a3
            + 0.2 * a2.powi(5))
    });
    LogCoeffs {
        gamma1: 0.5 * a2,
        gamma2: 0.5 * (a3 - 0.5 * a2 * a2),
        gamma3: 0.5 * (a4 - a2 * a3 + a2.powi(3) / 3.0),
        gamma4,
        gamma5,
    }
}

/// `γ₁γ₃ − γ₂²`.
pub fn h21_log(gamma: &LogCoeffs) -> HankelValue {
    HankelValue {
        value: gamma.gamma1 * gamma.gamma3 - gamma.gamma2 * gamma.gamma2,
        class: None,
        coordinates: CoordinateSystem::Taylor,
    }
}

/// `(a₂⁴ − 12a₃² + 12a₂a₄)/48`, the same functional written in Taylor coefficients.
pub fn h21_taylor(a: &TaylorPrefix) -> HankelValue {
    let (a2, a3, a4) = (a.a2, a.a3, a.a4);
    HankelValue {
        value: (a2.powi(4) - 12.0 * a3 * a3 + 12.0 * a2 * a4) / 48.0,
        class: None,
        coordinates: CoordinateSystem::Taylor,
    }
}

pub fn h21_from_c(c: &CaratheodoryCoeffs, class: ClassId) -> HankelValue {
    let (c1, c2, c3) = (c.c1, c.c2, c.c3);
    let value = match class {
        ClassId::LuneStarlike => {
            (-3.0 * c1.powi(4) - 8.0 * c1 * c1 * c2 - 48.0 * c2 * c2 + 64.0 * c1 * c3) / 3072.0
        }
        ClassId::LuneConvex => {
            (-7.0 * c1.powi(4) - 8.0 * c1 * c1 * c2 - 64.0 * c2 * c2 + 96.0 * c1 * c3) / 36864.0
        }
    };
    HankelValue {
        value,
        class: Some(class),
        coordinates: CoordinateSystem::CaratheodoryC,
    }
}

/// The `τ₃`-free part and the coefficient of `τ₃` in the `τ`-form of `H₂,₁`:
/// `H₂,₁ = rest + weight·τ₃` with `weight ≥ 0`.
pub fn tau_decomposition(tau1: f64, tau2: Complex64, class: ClassId) -> (Complex64, f64) {
    let t2 = tau1 * tau1;
    let s = 1.0 - t2;
    let spread = 1.0 - tau2.norm_sqr();
    match class {
        ClassId::LuneStarlike => {
            let rest = -3.0 * t2 * t2 + 4.0 * s * t2 * tau2 - 4.0 * s * (3.0 + t2) * tau2 * tau2;
            (rest / 192.0, 16.0 * tau1 * s * spread / 192.0)
        }
        ClassId::LuneConvex => {
            let rest = -3.0 * t2 * t2 + 12.0 * s * t2 * tau2 - 8.0 * s * (2.0 + t2) * tau2 * tau2;
            (rest / 2304.0, 24.0 * tau1 * s * spread / 2304.0)
        }
    }
}

pub fn h21_from_tau(t: &CaratheodoryPoint, class: ClassId) -> HankelValue {
    let (rest, weight) = tau_decomposition(t.tau1(), t.tau2(), class);
    HankelValue {
        value: rest + weight * t.tau3(),
        class: Some(class),
        coordinates: CoordinateSystem::TauParams,
    }
}

/// Determinant of the `q×q` Hankel matrix with entries `seq[n + i + j]`.
pub fn hankel_generic(seq: &[Complex64], q: usize, n: usize) -> Result<Complex64> {
    if q == 0 {
        return invalid("Hankel order q must be at least 1");
    }
    let needed = n + 2 * (q - 1) + 1;
    if seq.len() < needed {
        return invalid(format!(
            "H_{{{q},{n}}} needs {needed} sequence entries, got {}",
            seq.len()
        ));
    }
    let m = |i: usize, j: usize| seq[n + i + j];
    Ok(match q {
        1 => m(0, 0),
        2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
        3 => {
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        }
        _ => {
            let rows = (0..q).map(|i| (0..q).map(|j| m(i, j)).collect()).collect();
            determinant(rows)
        }
    })
}

/// Gaussian elimination with partial pivoting.
fn determinant(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let size = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * p;
            }
        }
    }
    det
}

/// `f_θ(z) = e^{−iθ} f(e^{iθ}z)`, i.e. `aₙ ↦ e^{i(n−1)θ} aₙ`.
pub fn rotate(f: &TruncatedSeries, theta: f64) -> Result<TruncatedSeries> {
    check_normalized(f)?;
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &a)| a * Complex64::from_polar(1.0, (n as f64 - 1.0) * theta));
    Ok(TruncatedSeries::new(coeffs, f.order()))
}
