use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branequant"))
        .current_dir(fixtures())
        .env_remove("BRANEQUANT_CACHE")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Coefficient of the monomial `exps` in order `k` of a serialized series.
fn coeff(series: &Value, k: usize, exps: &[u64]) -> f64 {
    series["coeffs"][k]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["exps"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).eq(exps.iter().copied()))
        .map_or(0.0, |t| t["coeff"].as_str().unwrap().parse().unwrap())
}

#[test]
fn star_exact_moyal() {
    let out = run(&[
        "--exact-weights",
        "--order",
        "1",
        "star",
        "--poisson",
        "moyal.json",
        "--f",
        "x1.json",
        "--g",
        "x2.json",
    ]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(coeff(&v["result"], 0, &[1, 1]), 1.0);
    assert_eq!(coeff(&v["result"], 1, &[0, 0]), 0.5);
    assert_eq!(v["weights"]["integrated"], 0);
}

#[test]
fn config_is_echoed() {
    let out = run(&[
        "--exact-weights",
        "--order",
        "1",
        "--seed",
        "9",
        "star",
        "--poisson",
        "moyal.json",
        "--f",
        "x1.json",
        "--g",
        "x2.json",
    ]);
    let v = json(&out);
    assert_eq!(v["config"]["run"]["seed"], 9);
    assert_eq!(v["config"]["run"]["order"], 1);
    assert_eq!(v["config"]["invocation"]["command"], "star");
    assert_eq!(v["config"]["invocation"]["poisson"], "moyal.json");
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", "--poisson", "so3.json", "--brane", "brane_so3_plane.json"]);
    assert_eq!(status(&ok), 0);
    assert!(json(&ok)["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));

    let bad = run(&["check", "--poisson", "non_poisson.json"]);
    assert_eq!(status(&bad), 1);

    let not_coiso = run(&["check", "--poisson", "symplectic4.json", "--brane", "brane_symplectic4.json"]);
    assert_eq!(status(&not_coiso), 1);

    let malformed = run(&["check", "--poisson", "malformed.json"]);
    assert_eq!(status(&malformed), 2);
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("line 2"));

    let missing = run(&["check", "--poisson", "does_not_exist.json"]);
    assert_eq!(status(&missing), 2);
}

#[test]
fn order_above_two_needs_opt_in() {
    let args =
        ["--exact-weights", "--order", "3", "star", "--poisson", "moyal.json", "--f", "x1.json", "--g", "x2.json"];
    assert_eq!(status(&run(&args)), 2);
}

#[test]
fn exact_mode_reports_missing_weights() {
    // Linear π at second order needs graphs with aerial edges, which have no closed form.
    let out = run(&["--exact-weights", "star", "--poisson", "so3.json", "--f", "r2_so3.json", "--g", "r2_so3.json"]);
    assert_eq!(status(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing weights"));
    let out = run(&[
        "--exact-weights",
        "--order",
        "1",
        "star",
        "--poisson",
        "so3.json",
        "--f",
        "r2_so3.json",
        "--g",
        "r2_so3.json",
    ]);
    assert_eq!(status(&out), 0);
}

#[test]
fn weights_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("weights.jsonl");
    let cache = cache.to_str().unwrap();
    let args =
        ["--samples", "100000", "--target-stderr", "0.01", "--cache", cache, "--order", "1", "weights", "--k", "1"];
    let first = run(&args);
    assert_eq!(status(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    let a = json(&first);
    assert_eq!(a["survivors"], 2);
    assert_eq!(a["weights"]["integrated"], 1);
    let vals: Vec<f64> = a["values"].as_array().unwrap().iter().map(|w| w["value"].as_f64().unwrap()).collect();
    assert!((vals[0] - 0.5).abs() < 0.01 && (vals[1] + 0.5).abs() < 0.01, "{vals:?}");

    let second = json(&run(&args));
    assert_eq!(second["weights"]["integrated"], 0);
    assert_eq!(second["weights"]["cache_hits"], 2);
    assert_eq!(second["values"], a["values"]);
}

#[test]
fn weights_beyond_second_order_enumerate_only() {
    let out = run(&["weights", "--k", "3"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["mode"], "enumeration-only");
    assert_eq!(v["enumerated"], "262144");
    assert!(String::from_utf8_lossy(&out.stderr).contains("enumeration only"));
}

#[test]
fn module_right_exact() {
    let out = run(&[
        "--exact-weights",
        "module",
        "--poisson",
        "moyal.json",
        "--c0",
        "brane_plane2.json",
        "--c1",
        "brane_line.json",
        "--side",
        "right",
        "--psi",
        "x1.json",
        "--f",
        "x1.json",
    ]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(coeff(&v["result"], 0, &[2, 0]), 1.0);
}

#[test]
fn lift_constant_case_and_obstruction() {
    let fixed = run(&[
        "--exact-weights",
        "lift",
        "--poisson",
        "symplectic4.json",
        "--brane",
        "brane_hyperplane4.json",
        "--f",
        "x1x2_4d.json",
    ]);
    assert_eq!(status(&fixed), 0, "{}", String::from_utf8_lossy(&fixed.stderr));
    let v = json(&fixed);
    assert_eq!(v["status"], "lifted");

    let obstructed =
        run(&["--exact-weights", "lift", "--poisson", "lie2.json", "--brane", "brane_line.json", "--f", "x1.json"]);
    assert_eq!(status(&obstructed), 1);
    let v = json(&obstructed);
    assert_eq!(v["status"], "obstructed");
    assert_eq!(v["order"], 0);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "jacobi"]);
    assert_eq!(status(&out), 0);
    assert_eq!(json(&out)["suite"], "jacobi");
    let out = run(&["verify", "--suite", "bimodule"]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(status(&run(&["verify", "--suite", "nope"])), 2);
}

#[test]
fn output_file_and_inputs_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let before = std::fs::read(fixtures().join("moyal.json")).unwrap();
    let out = run(&[
        "--exact-weights",
        "--order",
        "1",
        "--out",
        target.to_str().unwrap(),
        "star",
        "--poisson",
        "moyal.json",
        "--f",
        "x1.json",
        "--g",
        "x2.json",
    ]);
    assert_eq!(status(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&target).unwrap()).unwrap();
    assert_eq!(coeff(&v["result"], 1, &[0, 0]), 0.5);
    assert_eq!(std::fs::read(fixtures().join("moyal.json")).unwrap(), before);
}
