use std::fs;
use std::path::PathBuf;

use cdl_cli::execute;
use serde_json::{json, Value};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cdl-cli-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String) {
    execute(std::iter::once("cdl").chain(args.iter().copied()))
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}")))
}

#[test]
fn verify_di_on_the_pentagon_run() {
    let m = scratch("a2.json", r#"{"b": [[0, -1], [1, 0]]}"#);
    let (code, r) = report(&["verify-di", "--matrix", m.to_str().unwrap(), "--word", "1,2,1,2,1", "--samples", "100", "--wedge", "--vt"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["schema"], "cdl/1");
    assert_eq!(r["constant"], "3·π²/6");
    assert_eq!(r["constant_rational"]["numerator"], 3);
    assert_eq!(r["nu"], json!([2, 1]));
    assert_eq!(r["wedge"]["zero"], true);
    assert!(r["max_abs_residual"].as_array().unwrap().iter().all(|x| x.as_f64().unwrap() <= 1e-9));
}

#[test]
fn mutate_output_feeds_verify_di() {
    let m = scratch("b2.json", r#"{"b": [[0, -1], [2, 0]], "delta": [1, 2]}"#);
    let out = scratch("b2-run.json", "");
    let (code, _) = run(&["mutate", "--matrix", m.to_str().unwrap(), "--word", "1,2,1,2,1,2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let written: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["run"]["word"], json!([1, 2, 1, 2, 1, 2]));
    let (code, r) = report(&["verify-di", "--run", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["constant"], "6·π²/6");
}

#[test]
fn csd_reproduces_the_b2_walls() {
    let (code, r) = report(&["csd", "--delta", "1,2", "--degree", "12"]);
    assert_eq!(code, 0);
    let factors: Vec<Value> = r["walls"].as_array().unwrap().iter().flat_map(|w| w["factors"].as_array().unwrap().clone()).collect();
    assert_eq!(factors, vec![json!([[1, 0], 1]), json!([[1, 1], 2]), json!([[1, 2], 1]), json!([[0, 1], 2])]);
    assert_eq!(r["positive"], true);
}

#[test]
fn input_errors_exit_with_one() {
    let bad = scratch("bad.json", r#"{"b": [[0, 1], [1, 0]]}"#);
    assert_eq!(run(&["mutate", "--matrix", bad.to_str().unwrap(), "--word", "1"]).0, 1);
    let m = scratch("a2-dir.json", r#"{"b": [[0, -1], [1, 0]]}"#);
    assert_eq!(run(&["mutate", "--matrix", m.to_str().unwrap(), "--word", "3"]).0, 1);
    assert_eq!(run(&["csd", "--delta", "1,2,3"]).0, 1);
    assert_eq!(run(&["ysystem", "--X", "B3", "--Xp", "A2"]).0, 1);
    assert_eq!(run(&["qdi", "--degree", "4"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
}

#[test]
fn failed_verifications_exit_with_two() {
    let m = scratch("a2-short.json", r#"{"b": [[0, -1], [1, 0]]}"#);
    let (code, r) = report(&["verify-di", "--matrix", m.to_str().unwrap(), "--word", "1,2,1,2"]);
    assert_eq!(code, 2);
    assert_eq!(r["passed"], false);
    assert_eq!(r["failure"]["identity"], "periodicity");
}

#[test]
fn reports_are_deterministic() {
    let m = scratch("g2.json", r#"{"b": [[0, -1], [3, 0]]}"#);
    let args = ["verify-di", "--matrix", m.to_str().unwrap(), "--word", "1,2,1,2,1,2,1,2", "--rng-seed", "7", "--samples", "30"];
    let first = run(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, run(&args));
    assert_eq!(run(&["csd", "--delta", "2,2", "--degree", "6"]), run(&["csd", "--delta", "2,2", "--degree", "6"]));
}

#[test]
fn ysystem_and_qdi_reports() {
    let (code, r) = report(&["ysystem", "--X", "A3", "--Xp", "A2", "--mode", "tropical"]);
    assert_eq!(code, 0);
    assert_eq!(r["period"], 7);
    assert_eq!(r["n_minus"], 12);
    assert_eq!(r["omega_pair_used"], true);
    let (code, r) = report(&["qdi", "--type", "A2", "--form", "universal", "--degree", "8"]);
    assert_eq!(code, 0, "{r}");
    let (code, r) = report(&["qdi", "--case", "a1affine", "--degree", "4"]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn selftest_subset() {
    let (code, text) = run(&["selftest", "--only", "1,2,9", "--format", "text"]);
    assert_eq!(code, 0, "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 3);
}
