use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lune-hankel"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).arg("--json").output().unwrap();
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

#[test]
fn search_starlike_reaches_bound() {
    let (code, v) = json(&["search", "--class", "starlike"]);
    assert_eq!(code, 0);
    let sup = v["sup_found"].as_f64().unwrap();
    assert!((1.0 / 16.0 - 1e-5..=1.0 / 16.0 + 1e-9).contains(&sup));
}

#[test]
fn search_convex_argmax() {
    let (code, v) = json(&["search", "--class", "convex"]);
    assert_eq!(code, 0);
    assert!((v["argmax"]["tau1"].as_f64().unwrap() - 0.343).abs() < 1e-3);
}

#[test]
fn coarse_search_has_larger_gap() {
    let (_, fine) = json(&["search", "--class", "convex"]);
    let (code, coarse) = json(&["search", "--class", "convex", "--tau1-steps", "8", "--refine-depth", "0"]);
    assert_eq!(code, 0);
    assert!(coarse["gap"].as_f64().unwrap() > fine["gap"].as_f64().unwrap());
    assert!(coarse["within_bound"].as_bool().unwrap());
}

#[test]
fn series_g_and_h() {
    let (_, g) = json(&["series", "--function", "g", "--order", "5"]);
    let re: Vec<f64> = g["coefficients"].as_array().unwrap().iter().map(|r| r["re"].as_f64().unwrap()).collect();
    for (got, want) in re.iter().zip([0.0, 0.5, 0.0, 0.25]) {
        assert!((got - want).abs() < 1e-12);
    }
    let (_, h) = json(&["series", "--function", "h", "--order", "3"]);
    let a3 = h["coefficients"][1]["re"].as_f64().unwrap();
    assert!((a3 - 69f64.sqrt() / (12.0 * 17f64.sqrt())).abs() < 1e-12);
    assert!((a3 - 0.167893).abs() < 1e-5);
}

#[test]
fn ymax_with_oracle() {
    let (code, v) = json(&["ymax", "-A", "1", "-B", "0.1", "-C", "-0.5", "--oracle"]);
    assert_eq!(code, 0);
    assert!((v["value"].as_f64().unwrap() - 2.0016667).abs() < 1e-6);
    assert!(v["discrepancy"].as_f64().unwrap() < 1e-4);
    let (_, zero) = json(&["ymax", "-A", "0", "-B", "0", "-C", "0"]);
    assert_eq!(zero["value"], 1.0);
}

#[test]
fn membership_exit_codes() {
    let g = bin().args(["membership", "--function", "g", "--class", "starlike", "--radius", "0.9"]).output().unwrap().status;
    assert_eq!(g.code(), Some(0));
    let k = bin().args(["membership", "--function", "koebe", "--class", "starlike", "--radius", "0.9"]).output().unwrap().status;
    assert_eq!(k.code(), Some(1));
    let (code, h) = json(&["membership", "--function", "h", "--class", "convex", "--radius", "0.5"]);
    assert_eq!(code, 0);
    assert!(h["worst_margin"].as_f64().unwrap() > 0.0);
    let far = bin().args(["membership", "--function", "g", "--class", "starlike", "--radius", "0.95"]).output().unwrap();
    assert_eq!(far.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&far.stderr).contains("tail"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [&["search", "--class", "bogus"][..], &["series", "--function", "zeta"], &["frobnicate"], &[]] {
        assert_eq!(bin().args(args).output().unwrap().status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_writes_report_and_honours_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let report = dir.path().join("report.json");
    std::fs::write(&cfg, r#"{"order": 8, "y_samples": 1400, "search": {"tau1_steps": 40}}"#).unwrap();
    let out = bin()
        .args(["verify", "--config", cfg.to_str().unwrap(), "--tau2-radial", "20", "--output", report.to_str().unwrap()])
        .env("LUNE_HANKEL_THREADS", "1")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("overall:"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["config"]["order"], 8);
    assert_eq!(v["config"]["search"]["tau1_steps"], 40);
    assert_eq!(v["config"]["search"]["tau2_radial"], 20);
    assert_eq!(v["config"]["search"]["tau2_angular"], 256);
    let checks: Vec<&Value> = v["criteria"].as_array().unwrap().iter().flat_map(|c| c["checks"].as_array().unwrap()).collect();
    for c in &checks {
        for key in ["id", "anchor", "expected", "observed", "tolerance", "passed"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
    let all = checks.iter().all(|c| c["passed"] == true);
    assert_eq!(v["passed"], all);
    assert_eq!(out.status.code(), Some(if all { 0 } else { 1 }));
    // truncation order 8 cannot certify the 0.9 circle
    let reduced = checks
        .iter()
        .filter(|c| c["id"].as_str().unwrap().starts_with("membership-"))
        .any(|c| c["detail"].as_str().unwrap_or("").contains("reduced confidence"));
    assert!(reduced);
}
