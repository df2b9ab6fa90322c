//! C ABI over `lune-hankel`.
//!
//! Every function returns an [`LhStatus`]; results go through out-pointers.
//! Series are opaque [`LhSeries`] handles owned by the caller and released
//! with [`lh_series_free`]. After a non-`OK` status, [`lh_last_error`] holds a
//! message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lune_hankel::bound::{global_search, y_closed, y_oracle, SearchConfig, YArgs};
use lune_hankel::caratheodory::CaratheodoryPoint;
use lune_hankel::log_hankel::{h21_from_tau, h21_log, log_coeffs_series};
use lune_hankel::lune::{
    convex_boundary_extremal, extremal_g, extremal_h, koebe, membership_check, q_series, ClassId,
};
use lune_hankel::{Complex64, Error, TruncatedSeries};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Unsupported = 3,
    Panic = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for LhComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<LhComplex> for Complex64 {
    fn from(z: LhComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhClass {
    Starlike = 0,
    Convex = 1,
}

impl From<LhClass> for ClassId {
    fn from(c: LhClass) -> Self {
        match c {
            LhClass::Starlike => ClassId::LuneStarlike,
            LhClass::Convex => ClassId::LuneConvex,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhFunction {
    G = 0,
    H0 = 1,
    H = 2,
    Q = 3,
    Koebe = 4,
    ConvexBoundary = 5,
}

/// Opaque truncated power series.
pub struct LhSeries(TruncatedSeries);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhSearchResult {
    pub sup_found: f64,
    pub tau1: f64,
    pub tau2: LhComplex,
    pub tau3: LhComplex,
    pub theoretical_bound: f64,
    pub gap: f64,
    pub within_bound: bool,
    pub evaluations: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhMembershipResult {
    pub passed: bool,
    pub worst_margin: f64,
    pub worst_location: LhComplex,
    pub confidence_radius: f64,
    pub reduced_confidence: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: LhStatus, msg: impl Into<String>) -> LhStatus {
    set_error(msg.into());
    status
}

impl From<Error> for LhStatus {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidInput(_) => LhStatus::InvalidInput,
            _ => LhStatus::Unsupported,
        };
        fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), LhStatus>) -> LhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LhStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(LhStatus::Panic, "internal panic"),
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, LhStatus> {
    p.as_ref().ok_or_else(|| fail(LhStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(p: *mut T, value: T) -> Result<(), LhStatus> {
    if p.is_null() {
        return Err(fail(LhStatus::NullPointer, "output pointer is null"));
    }
    p.write(value);
    Ok(())
}

unsafe fn write_series(out: *mut *mut LhSeries, s: TruncatedSeries) -> Result<(), LhStatus> {
    write(out, Box::into_raw(Box::new(LhSeries(s))))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a series of the given order from `len` coefficients (missing ones are zero).
///
/// # Safety
/// `coeffs` must point to `len` readable values (it may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn lh_series_new(
    coeffs: *const LhComplex,
    len: usize,
    order: usize,
    out: *mut *mut LhSeries,
) -> LhStatus {
    guard(|| {
        let slice = if len == 0 {
            &[][..]
        } else {
            if coeffs.is_null() {
                return Err(fail(LhStatus::NullPointer, "coeffs is null"));
            }
            std::slice::from_raw_parts(coeffs, len)
        };
        write_series(out, TruncatedSeries::new(slice.iter().map(|&c| c.into()), order))
    })
}

/// # Safety
/// `s` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lh_series_free(s: *mut LhSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_series_order(s: *const LhSeries, out: *mut usize) -> LhStatus {
    guard(|| write(out, deref(s, "series")?.0.order()))
}

/// Coefficient `k`; `INVALID_INPUT` when `k` exceeds the order.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_series_coeff(s: *const LhSeries, k: usize, out: *mut LhComplex) -> LhStatus {
    guard(|| {
        let s = deref(s, "series")?;
        let c = s.0.get(k).ok_or_else(|| {
            fail(LhStatus::InvalidInput, format!("index {k} exceeds order {}", s.0.order()))
        })?;
        write(out, c.into())
    })
}

/// Evaluates inside the open unit disk.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_series_eval(s: *const LhSeries, z: LhComplex, out: *mut LhComplex) -> LhStatus {
    guard(|| write(out, deref(s, "series")?.0.eval(z.into())?.into()))
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhBinaryOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
    Compose = 4,
}

/// `a op b` as a new handle. `COMPOSE` computes `a ∘ b` and needs `b(0) = 0`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_series_binary(
    op: LhBinaryOp,
    a: *const LhSeries,
    b: *const LhSeries,
    out: *mut *mut LhSeries,
) -> LhStatus {
    guard(|| {
        let (a, b) = (&deref(a, "lhs")?.0, &deref(b, "rhs")?.0);
        let r = match op {
            LhBinaryOp::Add => a + b,
            LhBinaryOp::Sub => a - b,
            LhBinaryOp::Mul => a * b,
            LhBinaryOp::Div => a.div(b)?,
            LhBinaryOp::Compose => a.compose(b)?,
        };
        write_series(out, r)
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhUnaryOp {
    Exp = 0,
    Log = 1,
    Sqrt = 2,
    IntegrateQuotient = 3,
    Derivative = 4,
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_series_unary(op: LhUnaryOp, a: *const LhSeries, out: *mut *mut LhSeries) -> LhStatus {
    guard(|| {
        let a = &deref(a, "series")?.0;
        let r = match op {
            LhUnaryOp::Exp => a.exp()?,
            LhUnaryOp::Log => a.log()?,
            LhUnaryOp::Sqrt => a.sqrt()?,
            LhUnaryOp::IntegrateQuotient => a.integrate_quotient()?,
            LhUnaryOp::Derivative => a.derivative(),
        };
        write_series(out, r)
    })
}

/// One of the named functions, truncated at `order`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_function(f: LhFunction, order: usize, out: *mut *mut LhSeries) -> LhStatus {
    guard(|| {
        let s = match f {
            LhFunction::G => extremal_g(order)?,
            LhFunction::H0 => extremal_h(order)?.0,
            LhFunction::H => extremal_h(order)?.1,
            LhFunction::Q => q_series(order),
            LhFunction::Koebe => koebe(order),
            LhFunction::ConvexBoundary => convex_boundary_extremal(order)?,
        };
        write_series(out, s)
    })
}

/// `γ₁, γ₂, γ₃` of a normalized `f`, written to `out[0..3]`.
///
/// # Safety
/// `f` must be a live handle; `out` must have room for 3 values.
#[no_mangle]
pub unsafe extern "C" fn lh_log_coeffs(f: *const LhSeries, out: *mut LhComplex) -> LhStatus {
    guard(|| {
        let g = log_coeffs_series(&deref(f, "series")?.0)?;
        if out.is_null() {
            return Err(fail(LhStatus::NullPointer, "output pointer is null"));
        }
        for (i, v) in [g.gamma1, g.gamma2, g.gamma3].into_iter().enumerate() {
            out.add(i).write(v.into());
        }
        Ok(())
    })
}

/// `γ₁γ₃ − γ₂²` of a normalized `f` (order at least 6).
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_h21(f: *const LhSeries, out: *mut LhComplex) -> LhStatus {
    guard(|| {
        let g = log_coeffs_series(&deref(f, "series")?.0)?;
        write(out, h21_log(&g).value.into())
    })
}

/// `H₂,₁` at a Carathéodory parameter point.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_h21_from_tau(
    class: LhClass,
    tau1: f64,
    tau2: LhComplex,
    tau3: LhComplex,
    out: *mut LhComplex,
) -> LhStatus {
    guard(|| {
        let t = CaratheodoryPoint::new(tau1, tau2.into(), tau3.into())?;
        write(out, h21_from_tau(&t, class.into()).value.into())
    })
}

/// Closed-form `Y(A, B, C)`; `branch` receives the branch index 0..=6.
///
/// # Safety
/// `value` and `branch` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_y_closed(a: f64, b: f64, c: f64, value: *mut f64, branch: *mut u32) -> LhStatus {
    guard(|| {
        let y = y_closed(&YArgs::new(a, b, c));
        write(value, y.value)?;
        write(branch, y.branch.index() as u32)
    })
}

/// Brute-force disk maximum; both step counts must be at least 64.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_y_oracle(
    a: f64,
    b: f64,
    c: f64,
    radial_steps: usize,
    angular_steps: usize,
    out: *mut f64,
) -> LhStatus {
    guard(|| write(out, y_oracle(&YArgs::new(a, b, c), radial_steps, angular_steps)?))
}

/// Global search over the full parameter domain.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_global_search(
    class: LhClass,
    tau1_steps: usize,
    tau2_radial: usize,
    tau2_angular: usize,
    refine_depth: usize,
    out: *mut LhSearchResult,
) -> LhStatus {
    guard(|| {
        let cfg = SearchConfig {
            tau1_steps,
            tau2_radial,
            tau2_angular,
            refine_depth,
            tau1_range: (0.0, 1.0),
        };
        let r = global_search(class.into(), &cfg)?;
        write(
            out,
            LhSearchResult {
                sup_found: r.sup_found,
                tau1: r.argmax.tau1(),
                tau2: r.argmax.tau2().into(),
                tau3: r.argmax.tau3().into(),
                theoretical_bound: r.theoretical_bound,
                gap: r.gap,
                within_bound: r.within_bound,
                evaluations: r.grid_stats.evaluations,
            },
        )
    })
}

/// Sampled lune membership on `n_radii` circles.
///
/// # Safety
/// `f` must be a live handle, `radii` must point to `n_radii` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lh_membership(
    f: *const LhSeries,
    class: LhClass,
    radii: *const f64,
    n_radii: usize,
    samples_per_circle: usize,
    tol: f64,
    out: *mut LhMembershipResult,
) -> LhStatus {
    guard(|| {
        let f = &deref(f, "series")?.0;
        if radii.is_null() && n_radii > 0 {
            return Err(fail(LhStatus::NullPointer, "radii is null"));
        }
        let radii = if n_radii == 0 { &[][..] } else { std::slice::from_raw_parts(radii, n_radii) };
        let r = membership_check(f, class.into(), radii, samples_per_circle, tol)?;
        write(
            out,
            LhMembershipResult {
                passed: r.passed,
                worst_margin: r.worst_margin,
                worst_location: r.worst_location.into(),
                confidence_radius: r.confidence_radius,
                reduced_confidence: r.reduced_confidence,
            },
        )
    })
}
