use std::ffi::CStr;
use std::ptr;

use lune_hankel_ffi::*;

fn cx(re: f64, im: f64) -> LhComplex {
    LhComplex { re, im }
}

fn series(coeffs: &[LhComplex], order: usize) -> *mut LhSeries {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lh_series_new(coeffs.as_ptr(), coeffs.len(), order, &mut out) }, LhStatus::Ok);
    out
}

fn coeff(s: *const LhSeries, k: usize) -> LhComplex {
    let mut c = cx(f64::NAN, f64::NAN);
    assert_eq!(unsafe { lh_series_coeff(s, k, &mut c) }, LhStatus::Ok);
    c
}

fn last_error() -> String {
    let p = lh_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn series_roundtrip_and_ops() {
    let one_plus_z = series(&[cx(1.0, 0.0), cx(1.0, 0.0)], 6);
    let mut order = 0;
    assert_eq!(unsafe { lh_series_order(one_plus_z, &mut order) }, LhStatus::Ok);
    assert_eq!(order, 6);

    let mut sq = ptr::null_mut();
    assert_eq!(
        unsafe { lh_series_binary(LhBinaryOp::Mul, one_plus_z, one_plus_z, &mut sq) },
        LhStatus::Ok
    );
    assert_eq!(coeff(sq, 1), cx(2.0, 0.0));

    let mut root = ptr::null_mut();
    assert_eq!(unsafe { lh_series_unary(LhUnaryOp::Sqrt, sq, &mut root) }, LhStatus::Ok);
    for k in 0..=6 {
        let want = if k < 2 { 1.0 } else { 0.0 };
        assert!((coeff(root, k).re - want).abs() < 1e-14);
    }

    let mut v = cx(0.0, 0.0);
    assert_eq!(unsafe { lh_series_eval(one_plus_z, cx(0.5, 0.0), &mut v) }, LhStatus::Ok);
    assert_eq!(v, cx(1.5, 0.0));
    for s in [one_plus_z, sq, root] {
        unsafe { lh_series_free(s) };
    }
}

#[test]
fn errors_map_to_status_codes() {
    let z = series(&[cx(0.0, 0.0), cx(1.0, 0.0)], 4);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lh_series_unary(LhUnaryOp::Log, z, &mut out) }, LhStatus::InvalidInput);
    assert!(!last_error().is_empty());
    assert!(out.is_null());

    let mut c = cx(0.0, 0.0);
    assert_eq!(unsafe { lh_series_coeff(z, 9, &mut c) }, LhStatus::InvalidInput);
    assert!(last_error().contains("exceeds"));
    assert_eq!(unsafe { lh_series_coeff(ptr::null(), 0, &mut c) }, LhStatus::NullPointer);
    assert_eq!(unsafe { lh_series_coeff(z, 0, ptr::null_mut()) }, LhStatus::NullPointer);

    let mut v = cx(0.0, 0.0);
    assert_eq!(unsafe { lh_series_eval(z, cx(1.0, 0.0), &mut v) }, LhStatus::InvalidInput);
    unsafe { lh_series_free(z) };
    unsafe { lh_series_free(ptr::null_mut()) };
}

#[test]
fn extremal_values() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { lh_function(LhFunction::G, 64, &mut g) }, LhStatus::Ok);
    let mut h21 = cx(0.0, 0.0);
    assert_eq!(unsafe { lh_h21(g, &mut h21) }, LhStatus::Ok);
    assert!(((h21.re * h21.re + h21.im * h21.im).sqrt() - 1.0 / 16.0).abs() < 1e-10);
    let mut gamma = [cx(0.0, 0.0); 3];
    assert_eq!(unsafe { lh_log_coeffs(g, gamma.as_mut_ptr()) }, LhStatus::Ok);
    assert!(gamma[0].re.abs() < 1e-14 && (gamma[1].re - 0.25).abs() < 1e-12);

    let mut m = std::mem::MaybeUninit::<LhMembershipResult>::uninit();
    let radii = [0.5, 0.9];
    assert_eq!(
        unsafe { lh_membership(g, LhClass::Starlike, radii.as_ptr(), 2, 720, 1e-3, m.as_mut_ptr()) },
        LhStatus::Ok
    );
    assert!(unsafe { m.assume_init() }.passed);
    let far = [0.95];
    assert_eq!(
        unsafe { lh_membership(g, LhClass::Starlike, far.as_ptr(), 1, 720, 1e-3, m.as_mut_ptr()) },
        LhStatus::InvalidInput
    );
    unsafe { lh_series_free(g) };

    let mut h = ptr::null_mut();
    assert_eq!(unsafe { lh_function(LhFunction::H, 64, &mut h) }, LhStatus::Ok);
    assert!((coeff(h, 3).re - 69f64.sqrt() / (12.0 * 17f64.sqrt())).abs() < 1e-12);
    unsafe { lh_series_free(h) };
}

#[test]
fn tau_y_and_search() {
    let mut v = cx(0.0, 0.0);
    let t1 = (2.0f64 / 17.0).sqrt();
    assert_eq!(
        unsafe { lh_h21_from_tau(LhClass::Convex, t1, cx(-1.0, 0.0), cx(0.0, 0.0), &mut v) },
        LhStatus::Ok
    );
    assert!((v.re + 23.0 / 3264.0).abs() < 1e-12);
    assert_eq!(
        unsafe { lh_h21_from_tau(LhClass::Convex, 1.5, cx(0.0, 0.0), cx(0.0, 0.0), &mut v) },
        LhStatus::InvalidInput
    );

    let (mut y, mut branch) = (0.0, 99u32);
    assert_eq!(unsafe { lh_y_closed(1.0, 3.0, 1.0, &mut y, &mut branch) }, LhStatus::Ok);
    assert_eq!((y, branch), (5.0, 0));
    let mut oracle = 0.0;
    assert_eq!(unsafe { lh_y_oracle(1.0, 0.1, -0.5, 64, 256, &mut oracle) }, LhStatus::Ok);
    assert!((oracle - 2.0016667).abs() < 1e-4);
    assert_eq!(unsafe { lh_y_oracle(1.0, 0.1, -0.5, 8, 8, &mut oracle) }, LhStatus::InvalidInput);

    let mut r = std::mem::MaybeUninit::<LhSearchResult>::uninit();
    assert_eq!(unsafe { lh_global_search(LhClass::Starlike, 40, 20, 64, 4, r.as_mut_ptr()) }, LhStatus::Ok);
    let r = unsafe { r.assume_init() };
    assert!(r.within_bound && (r.sup_found - 0.0625).abs() < 1e-5);
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lune_hankel.h")).unwrap();
    for name in ["lh_series_new", "lh_series_free", "lh_h21", "lh_global_search", "LH_STATUS_PANIC", "typedef struct LhSeries LhSeries"] {
        assert!(header.contains(name), "{name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/lune_hankel.h");
    let Ok(out) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .output()
    else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
