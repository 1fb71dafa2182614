use std::path::Path;
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

use polegerm_cli::{run, Outcome};

fn call(args: &[&str]) -> Outcome {
    run(std::iter::once("polegerm").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> Value {
    let out = call(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn decompose_reports_polar_terms() {
    let out = ok(&["decompose", "1/(x1*x2)"]);
    assert_eq!(out["command"], "decompose");
    assert_eq!(out["result"]["poly"], "0");
    assert!(!out["result"]["polar"].as_array().unwrap().is_empty());
}

#[test]
fn laurent_on_default_support() {
    let out = ok(&["laurent", "(x1 + 1)/x1"]);
    assert_eq!(out["result"]["poly"], "1");
    assert_eq!(out["result"]["terms"].as_array().unwrap().len(), 1);
    assert_eq!(out["support"]["cones"], serde_json::json!([[["1"]]]));
}

#[test]
fn projections_and_residues() {
    assert_eq!(ok(&["project-plus", "(1 + x1)/x1"])["result"], "1");
    let m = ok(&["project-minus", "(1 + x1)/x1"]);
    assert_eq!(m["result"]["poly"], "0");
    assert_eq!(ok(&["p-order", "1/(x1*(x1 + x2))"])["result"], 2);
    assert_eq!(ok(&["p-order", "x1 + x2"])["result"], 0);
    let pres = ok(&["p-res", "1/(x1*x2) + 1/x1"]);
    assert_eq!(pres["result"]["polar"].as_array().unwrap().len(), 1);
    let grade = ok(&["grade", "1/(x1*x2) + 1/x1 + x2"]);
    assert!(grade["components"].as_array().unwrap().len() >= 2);
    let cop = ok(&["coproduct", "(1 + x2)/x1"]);
    assert!(!cop["terms"].as_array().unwrap().is_empty());
}

#[test]
fn jk_with_subspace_file() {
    let dir = TempDir::new().unwrap();
    let u = file(&dir, "u.txt", "1 0\n0 1\n");
    let out = ok(&["jk", "1/(x1*x2) + 1/x1^2", "--subspace", &u]);
    assert_eq!(out["text"], ok(&["jk", "1/(x1*x2)", "--subspace", &u])["text"]);
}

#[test]
fn brion_vergne_split_and_arrangement_check() {
    let dir = TempDir::new().unwrap();
    let arr = file(&dir, "arr.txt", "1 0\n0 1\n1 1\n");
    let out = ok(&["brion-vergne", "1/(x1*x2) + 1/x1^2", "--arrangement", &arr]);
    assert_eq!(out["generated"]["polar"].as_array().unwrap().len(), 1);
    // A pole outside the arrangement is a precondition violation.
    assert_eq!(call(&["brion-vergne", "1/(x1 - x2)", "--arrangement", &arr]).code, 3);
}

#[test]
fn cone_refine_and_check() {
    let dir = TempDir::new().unwrap();
    let fam = file(&dir, "fam.txt", "1 0; 0 1\n1 0; 1 1\n");
    let refined = ok(&["cone", "refine", &fam]);
    assert_eq!(refined["family"]["cones"].as_array().unwrap().len(), 2);
    assert_eq!(refined["index_sets"], serde_json::json!([[0, 1], [1]]));
    let check = ok(&["cone", "check", &fam]);
    assert_eq!(check["properly_positioned"], false);
    assert_eq!(check["counterexample"]["indices"], serde_json::json!([0, 1]));
    let proper = file(&dir, "proper.txt", "1 0; 1 1\n0 1; 1 1\n");
    let check = ok(&["cone", "check", &proper]);
    assert_eq!(check["properly_positioned"], true);
    assert_eq!(check["counterexample"], Value::Null);
}

#[test]
fn exp_sum_with_explicit_point() {
    let dir = TempDir::new().unwrap();
    let cone = file(&dir, "cone.txt", "1 0\n0 1\n");
    let lat = file(&dir, "lat.txt", "1 0\n0 1\n");
    let out = ok(&["exp-sum", "--cone", &cone, "--lattice", &lat, "--point", "-1 -1/2"]);
    assert_eq!(out["smooth"], true);
    assert_eq!(out["p_res_equals_integral"], true);
    assert_eq!(out["oracle"]["within_tolerance"], true);
    assert_eq!(out["oracle"]["point"], serde_json::json!([-1.0, -0.5]));
    assert_eq!(call(&["exp-sum", "--cone", &cone, "--lattice", &lat, "--point", "-1"]).code, 2);
}

#[test]
fn gram_file_changes_the_space_not_the_germ() {
    let dir = TempDir::new().unwrap();
    let gram = file(&dir, "gram.txt", "2 1\n1 1\n");
    let f = "(x1 + x2^2)/(x1*(x1 + x2))";
    let a = ok(&["p-res", f]);
    let b = ok(&["--gram", &gram, "p-res", f]);
    assert_eq!(a["text"], b["text"]);
    let bad = file(&dir, "bad.txt", "1 2\n3\n");
    assert_eq!(call(&["--gram", &bad, "p-res", f]).code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["verify", "1/x1", "1/(x1"]).code, 2);
    assert_eq!(call(&["laurent", "1/(x1^2 + x2^2)"]).code, 3);
    assert_eq!(call(&["--dim", "40", "laurent", "1/x1"]).code, 4);
    assert_eq!(call(&["--cap", "2", "laurent", "1/x3"]).code, 4);
    assert_eq!(call(&["laurent", "1/x1", "--support", "/nonexistent/support.txt"]).code, 2);
    assert_eq!(call(&["no-such-command"]).code, 2);
    let help = call(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("laurent"));
    let err = call(&["laurent", "1/(x1^2 + x2^2)"]);
    assert!(err.stdout.is_empty());
    assert!(err.stderr.starts_with("error: "));
}

#[test]
fn verify_distinguishes_germs() {
    assert_eq!(ok(&["verify", "x1/x1", "1"])["equal"], true);
    assert_eq!(ok(&["verify", "1/x1", "1/x2"])["equal"], false);
}

#[test]
fn binary_matches_library_and_is_deterministic() {
    let bin = Path::new(env!("CARGO_BIN_EXE_polegerm"));
    let args = ["laurent", "(x1 + 2*x2)/(x1*(x1 + x2)*x2)", "--seed", "9"];
    let runs: Vec<_> = (0..2).map(|_| Command::new(bin).args(args).output().unwrap()).collect();
    assert!(runs[0].status.success());
    assert_eq!(runs[0].stdout, runs[1].stdout);
    assert_eq!(String::from_utf8(runs[0].stdout.clone()).unwrap(), call(&args).stdout);
    let bad = Command::new(bin).args(["laurent", "1/(x1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn output_ignores_the_seed(a in -3i64..4, b in -3i64..4, c in 1i64..4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let expr = format!("({a}*x1 + {b}*x2 + 1)/(x1*({c}*x1 + x2))");
        let one = call(&["--seed", &s1.to_string(), "laurent", &expr]);
        let two = call(&["--seed", &s2.to_string(), "laurent", &expr]);
        prop_assert_eq!(one.code, 0);
        prop_assert_eq!(one, two);
    }
}
