use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn pnkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pnkit")).args(args).env_remove("PNKIT_SEED").output().expect("run pnkit")
}

fn pnkit_env(args: &[&str], seed: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pnkit")).args(args).env("PNKIT_SEED", seed).output().expect("run pnkit")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn write_spec(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn eval_alpha_simple_value() {
    let o = pnkit(&["eval", fixture("alpha_simple.json").to_str().unwrap(), "--xs", "0,4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "x,value\n0.000000000,0.000000000\n4.000000000,0.632120559\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn eval_at_origin_is_eps0() {
    let o = pnkit(&["eval", fixture("alpha_simple.json").to_str().unwrap(), "--point", "0", "--xs", "0,0.001,1,50"]);
    assert_eq!(code(&o), 0);
    let vals: Vec<f64> = rows(&stdout(&o)).iter().map(|r| r[1]).collect();
    assert_eq!(vals, vec![0.0, 1.0, 1.0, 1.0]);
}

#[test]
fn eval_negative_coordinates() {
    let o = pnkit(&["eval", fixture("alpha_simple.json").to_str().unwrap(), "--point", "-2", "--xs", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("4.000000000,0.632120559\n"));
}

#[test]
fn eval_rejects_malformed_vectors() {
    let spec = fixture("alpha_simple.json");
    assert_eq!(code(&pnkit(&["eval", spec.to_str().unwrap(), "--point", "1,x"])), 2);
    assert_eq!(code(&pnkit(&["eval", spec.to_str().unwrap(), "--point", "1,2"])), 2);
    assert_eq!(code(&pnkit(&["eval", spec.to_str().unwrap(), "--xs", "-1"])), 2);
}

#[test]
fn axioms_on_alpha_simple_pass() {
    let o = pnkit(&["check", fixture("alpha_simple.json").to_str().unwrap(), "--suite", "axioms"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["outcome"], "pass");
    assert_eq!(v["suites"][0]["suite"], "axioms");
}

#[test]
fn bounded_but_not_d_bounded_singleton() {
    let o = pnkit(&["check", fixture("half_singleton.json").to_str().unwrap(), "--suite", "thm83"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let r = &v["suites"][0]["result"]["sets"][0]["result"];
    assert_eq!(r["d_bounded"], false);
    assert_eq!(r["criterion_a"], false);
    assert_eq!(r["bounded"]["verdict"], "bounded");
    let notes = r["report"]["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n == "bounded and not D-bounded"));
}

#[test]
fn mismatched_alpha_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut spec: Value = serde_json::from_str(&std::fs::read_to_string(fixture("alpha_simple.json")).unwrap()).unwrap();
    spec["serstnev"] = serde_json::json!({ "alpha": 2.1 });
    let p = write_spec(&dir, "mismatch.json", &spec.to_string());
    let o = pnkit(&["check", p.to_str().unwrap(), "--suite", "serstnev"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let c = &v["suites"][0]["result"]["serstnev"]["checks"][0];
    assert_eq!(c["passed"], false);
    for key in ["p", "lambda", "x"] {
        assert!(c["witness"][key].is_array(), "missing {key}");
    }
}

#[test]
fn serstnev_on_matching_alpha_passes() {
    let o = pnkit(&["check", fixture("alpha_simple.json").to_str().unwrap(), "--suite", "serstnev", "--samples", "20"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn holder_suite_passes() {
    let o = pnkit(&["check", fixture("alpha_simple.json").to_str().unwrap(), "--suite", "holder", "--samples", "20"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn several_suites_keep_their_order() {
    let o = pnkit(&[
        "check",
        fixture("alpha_simple.json").to_str().unwrap(),
        "--suite",
        "thm83",
        "--suite",
        "axioms",
        "--suite",
        "serstnev",
        "--samples",
        "20",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["thm83", "axioms", "serstnev"]);
}

#[test]
fn better_suite() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_spec(
        &dir,
        "better.json",
        r#"{
          "space": { "dim": 2, "prob_norm": { "simple": { "base": "uniform_unit" } },
                     "tau": { "tau_t": "product" }, "tau_star": { "tau_t": "m" } },
          "compare": { "dim": 2, "prob_norm": { "simple": { "base": "uniform_unit" } },
                       "tau": { "tau_t": "product" }, "tau_star": { "tau_t_star": "product" } }
        }"#,
    );
    let o = pnkit(&["check", p.to_str().unwrap(), "--suite", "better", "--samples", "20"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(json(&o)["suites"][0]["result"]["is_better"], true);
}

#[test]
fn fnorm_suite_on_ratio_line() {
    let o = pnkit(&["check", fixture("ratio_line.json").to_str().unwrap(), "--suite", "fnorm", "--samples", "20"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn inconclusive_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_spec(
        &dir,
        "inc.json",
        r#"{ "space": { "dim": 1, "prob_norm": { "simple": { "base": "exponential" } } },
             "phi": "identity", "sets": [{ "kind": "ball", "radius": 1000 }],
             "bounds": { "max_n": 8, "max_k": 2 } }"#,
    );
    let o = pnkit(&["check", p.to_str().unwrap(), "--suite", "thm83"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["outcome"], "inconclusive");
}

#[test]
fn schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_spec(&dir, "a.json", r#"{ "space": { "dim": 1, "prob_norm": { "simple": { "base": "exponential" } }, "colour": 1 } }"#);
    let o = pnkit(&["check", unknown.to_str().unwrap(), "--suite", "axioms"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    let set_key = write_spec(
        &dir,
        "b.json",
        r#"{ "space": { "dim": 1, "prob_norm": { "simple": { "base": "exponential" } } }, "sets": [{ "kind": "ball", "r": 1 }] }"#,
    );
    assert_eq!(code(&pnkit(&["check", set_key.to_str().unwrap(), "--suite", "axioms"])), 2);
    let no_compare = fixture("alpha_simple.json");
    assert_eq!(code(&pnkit(&["check", no_compare.to_str().unwrap(), "--suite", "better"])), 2);
    assert_eq!(code(&pnkit(&["check", no_compare.to_str().unwrap(), "--suite", "nonsense"])), 2);
    assert_eq!(code(&pnkit(&["check", dir.path().join("missing.json").to_str().unwrap(), "--suite", "axioms"])), 2);
}

#[test]
fn seed_precedence() {
    let spec = fixture("ratio_line.json");
    let s = spec.to_str().unwrap();
    assert_eq!(json(&pnkit(&["check", s, "--suite", "axioms", "--samples", "5"]))["seed"], 0);
    assert_eq!(json(&pnkit_env(&["check", s, "--suite", "axioms", "--samples", "5"], "17"))["seed"], 17);
    assert_eq!(json(&pnkit_env(&["check", s, "--suite", "axioms", "--samples", "5", "--seed", "3"], "17"))["seed"], 3);
    // a seed in the spec file beats the environment
    assert_eq!(json(&pnkit_env(&["check", fixture("alpha_simple.json").to_str().unwrap(), "--suite", "axioms", "--samples", "5"], "17"))["seed"], 1);
    assert_eq!(code(&pnkit_env(&["check", s, "--suite", "axioms"], "abc")), 2);
}

#[test]
fn reports_are_deterministic() {
    let s = fixture("alpha_simple.json");
    let args = ["check", s.to_str().unwrap(), "--suite", "axioms", "--suite", "serstnev", "--seed", "9", "--samples", "15"];
    let (a, b) = (pnkit(&args), pnkit(&args));
    assert_eq!(a.stdout, b.stdout);
    let other = pnkit(&["check", s.to_str().unwrap(), "--suite", "axioms", "--suite", "serstnev", "--seed", "10", "--samples", "15"]);
    assert_eq!(code(&other), 0);
}

#[test]
fn pretty_output_parses_the_same() {
    let s = fixture("ratio_line.json");
    let compact = json(&pnkit(&["check", s.to_str().unwrap(), "--suite", "axioms", "--samples", "5", "--json"]));
    let pretty = pnkit(&["check", s.to_str().unwrap(), "--suite", "axioms", "--samples", "5", "--pretty"]);
    assert!(stdout(&pretty).contains("\n  "));
    assert_eq!(compact, json(&pretty));
}

#[test]
fn radius_curve_of_unit_ball() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("radius.csv");
    let o = pnkit(&["curves", fixture("steps_tau_m.json").to_str().unwrap(), "--what", "radius", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("x,set_0\n"));
    assert!(!text.contains('\r'));
    for r in rows(&text) {
        assert!((r[1] - (1.0 - (-r[0]).exp())).abs() <= 5e-10, "{r:?}");
    }
}

#[test]
fn tau_curve_of_steps() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tau.csv");
    let o = pnkit(&[
        "curves",
        fixture("steps_tau_m.json").to_str().unwrap(),
        "--what",
        "tau",
        "--out",
        out.to_str().unwrap(),
        "--xs",
        "2.9,3,3.000001,4",
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("x,tau,tau_star"));
    let taus: Vec<f64> = rows(&text).iter().map(|r| r[1]).collect();
    assert_eq!(taus, vec![0.0, 0.0, 1.0, 1.0]);
}

#[test]
fn delta_curve_along_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("delta.csv");
    let o = pnkit(&["curves", fixture("ratio_line.json").to_str().unwrap(), "--what", "delta", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("t,delta\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 9);
    for row in r {
        let g = row[0] / (1.0 + row[0]);
        assert!((row[1] - g.min(1.0)).abs() <= 1e-8, "{row:?}");
    }
}

#[test]
fn nu_curve_matches_eval() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nu.csv");
    let spec = fixture("alpha_simple.json");
    let o = pnkit(&["curves", spec.to_str().unwrap(), "--what", "nu", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let e = pnkit(&["eval", spec.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&e));
}

#[test]
fn curves_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let spec = fixture("steps_tau_m.json");
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for out in [&a, &b] {
        assert_eq!(code(&pnkit(&["curves", spec.to_str().unwrap(), "--what", "radius", "--out", out.to_str().unwrap()])), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn unwritable_output_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing-dir").join("x.csv");
    let o = pnkit(&["curves", fixture("steps_tau_m.json").to_str().unwrap(), "--what", "radius", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn missing_curve_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = pnkit(&["curves", fixture("half_singleton.json").to_str().unwrap(), "--what", "tau", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}
