use lune_hankel::bound::SearchConfig;
use lune_hankel::verify::{run_suite, VerifyConfig};

#[test]
fn suite_numbers_are_reproducible() {
    let cfg = VerifyConfig {
        y_samples: 1400,
        pipeline_points: 200,
        log_prefixes: 200,
        search: SearchConfig { tau1_steps: 60, ..SearchConfig::default() },
        ..VerifyConfig::default()
    };
    let strip = |mut r: lune_hankel::verify::VerificationReport| {
        r.runtime_seconds = 0.0;
        serde_json::to_string(&r).unwrap()
    };
    let first = strip(run_suite(&cfg).unwrap());
    let second = strip(run_suite(&cfg).unwrap());
    assert_eq!(first, second);
}
