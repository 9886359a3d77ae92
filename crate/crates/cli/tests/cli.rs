//! End-to-end tests of the `euler-action` binary: exit codes, output
//! contracts and determinism.

use std::path::Path;
use std::process::{Command, Output};

use euler_action::fixture;

const DEFAULT_CONFIG: &str = include_str!("../configs/default.json");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_euler-action"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn write_config(dir: &Path, contents: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

/// Replace exactly one occurrence, failing loudly if the needle is absent.
fn patch(base: &str, needle: &str, replacement: &str) -> String {
    assert!(base.contains(needle), "patch needle missing: {needle}");
    base.replacen(needle, replacement, 1)
}

#[test]
fn verify_default_passes_and_is_byte_deterministic() {
    let first = run(&["verify", "--json"]);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    let text = stdout(&first);
    assert!(text.contains("\"passed\": true"));
    assert!(text.contains("\"counterexample\": true"));
    assert!(text.contains("\"fixture_detected\": true"));

    let second = run(&["verify", "--json"]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "report must be byte-identical");
}

#[test]
fn verify_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "--grid",
        "301x301",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("verify: PASS"));
    let report = std::fs::read_to_string(dir.path().join("verify_report.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(value["passed"], serde_json::Value::Bool(true));
    assert_eq!(value["stages"].as_array().unwrap().len(), 4);
}

#[test]
fn malformed_config_exits_3_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "{\n  \"eos\": { broken\n}");
    let out = run(&["verify", "--config", &path]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn bad_expression_reports_field_and_byte_offset() {
    let dir = tempfile::tempdir().unwrap();
    let text = patch(
        DEFAULT_CONFIG,
        "\"57*sqrt(35)/10 + 59*sqrt(915)/30\"",
        "\"57*sqrt(35\"",
    );
    let path = write_config(dir.path(), &text);
    let out = run(&["verify", "--config", &path]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("riemann.left.v"), "stderr: {err}");
    assert!(err.contains("byte 10"), "stderr: {err}");
}

#[test]
fn identical_states_solve_to_no_waves() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        r#"{
            "eos": { "k": 1, "gamma": 2 },
            "riemann": {
                "left":  { "rho": 2, "u": 0.25, "v": -1 },
                "right": { "rho": 2, "u": 0.25, "v": -1 }
            },
            "times": { "t0": 0.5, "t": 1 }
        }"#,
    );
    let out = run(&["riemann", "--config", &path]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("no waves"));

    // The same configuration verifies trivially: no counterexample.
    let out = run(&["verify", "--config", &path, "--grid", "51x51"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verify: PASS"));
    assert!(!text.contains("undercuts"));
}

#[test]
fn halved_kinetic_level_fails_at_the_feasibility_stage() {
    let dir = tempfile::tempdir().unwrap();
    let text = patch(
        DEFAULT_CONFIG,
        "\"c1\": \"1121*sqrt(1281)/20 + 28037/12\"",
        "\"c1\": \"(1121*sqrt(1281)/20 + 28037/12)/2\"",
    );
    let path = write_config(dir.path(), &text);
    let out = run(&["verify", "--config", &path]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verify: FAIL at stage feasibility"), "{text}");
    assert!(text.contains("[FAIL]"), "{text}");
}

#[test]
fn subsolution_check_reports_feasible() {
    let out = run(&["subsolution", "check"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("feasible: yes"));
}

#[test]
fn subsolution_solve_recovers_the_member_from_a_perturbed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = DEFAULT_CONFIG.to_string();
    for (needle, replacement) in [
        (
            "\"mu0\": \"-(57*sqrt(35)/20 + 59*sqrt(915)/60)\"",
            "\"mu0\": -46.0",
        ),
        (
            "\"mu1\": \"57*sqrt(35)/20 + 59*sqrt(915)/60\"",
            "\"mu1\": 47.0",
        ),
        ("\"u1\": 0", "\"u1\": 0.05"),
        ("\"v1\": 0", "\"v1\": -0.03"),
        (
            "\"gamma1\": \"-(1121*sqrt(1281)/40) - 28013/24\"",
            "\"gamma1\": -2171.0",
        ),
        ("\"delta1\": 0", "\"delta1\": 0.2"),
    ] {
        text = patch(&text, needle, replacement);
    }
    let path = write_config(dir.path(), &text);
    let out = run(&["subsolution", "solve", "--config", &path, "--json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();

    let fx = fixture::counterexample();
    let close = |field: &str, expected: f64| {
        let got = doc["solution"][field].as_f64().unwrap();
        assert!(
            (got - expected).abs() <= 1e-10 * expected.abs().max(1.0),
            "{field}: {got} vs {expected}"
        );
    };
    close("mu0", fx.sub.mu0);
    close("mu1", fx.sub.mu1);
    close("u1", fx.sub.u1);
    close("v1", fx.sub.v1);
    close("gamma1", fx.sub.gamma1);
    close("delta1", fx.sub.delta1);
    assert_eq!(
        doc["feasibility"]["violations"].as_array().unwrap().len(),
        0
    );
}

#[test]
fn scan_writes_the_grid_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "subsolution",
        "scan",
        "--grid",
        "4x4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("scan.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 17, "header plus 16 cells");
    assert!(lines[0].starts_with("rho1,c1,feasible,worst_residual"));
    assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 9));
    // The 4x4 grid lands one cell on the seed itself, which is feasible.
    assert!(lines.iter().any(|l| l.contains(",true,")), "{csv}");
}

#[test]
fn figures_emit_the_documented_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["figures", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    for name in [
        "waves.csv",
        "regions.json",
        "action_first.csv",
        "action_second.csv",
        "comparison.json",
    ] {
        assert!(dir.path().join(name).is_file(), "missing {name}");
    }

    let waves = std::fs::read_to_string(dir.path().join("waves.csv")).unwrap();
    assert!(waves.starts_with("solution,slab,boundary,kind,speed"));
    let glued_shocks = waves
        .lines()
        .filter(|l| l.starts_with("glued,1,") && l.contains(",shock,"))
        .count();
    assert_eq!(glued_shocks, 4, "{waves}");
    assert!(waves.lines().any(|l| l.starts_with("planar,")));

    let comparison: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("comparison.json")).unwrap())
            .unwrap();
    let crossings = comparison["crossing_times"].as_array().unwrap();
    assert_eq!(crossings.len(), 1);
    assert!((crossings[0].as_f64().unwrap() - 0.7019084813178085).abs() < 1e-6);
}

#[test]
fn riemann_emits_a_sampled_profile() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "riemann",
        "--grid",
        "101x1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("riemann_profile.csv")).unwrap();
    assert!(csv.starts_with("xi,rho,u,v\n"));
    assert_eq!(csv.lines().count(), 102);
    assert!(dir.path().join("riemann_fan.json").is_file());
}

#[test]
fn usage_errors_exit_3() {
    let out = run(&["verify", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["verify", "--grid", "0x5"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["verify", "--tol=-1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("--tol"));
    let out = run(&["verify", "--config", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(3));
}
