use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bracketdiag"))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).current_dir(fixtures().join("..")).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn enumerate_counts() {
    assert_eq!(json(&["enumerate", "--variant", "b", "--parity", "even", "--i", "2", "--j", "4"])["count"], 3);
    assert_eq!(json(&["enumerate", "--variant", "b0", "--parity", "odd", "--i", "1", "--j", "2"])["count"], 0);
    let trivial = json(&["enumerate", "--i", "0", "--j", "0"]);
    assert_eq!(trivial["count"], 1);
    assert_eq!(trivial["diagrams"][0]["diagram"], "()");
}

fn bidegree(v: &Value, i: u64, j: u64) -> Value {
    v["bidegrees"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["i"] == i && r["j"] == j)
        .cloned()
        .expect("bidegree present")
}

#[test]
fn homology_examples() {
    let b = json(&["homology", "--variant", "b", "--parity", "even", "--i-max", "2"]);
    let h = bidegree(&b, 2, 4);
    assert_eq!((h["rank"].clone(), h["torsion"].clone()), (Value::from(1), serde_json::json!([2])));
    assert_eq!(b["partial"], false);
    let q = json(&["homology", "--variant", "b0", "--parity", "odd", "--i-max", "3"]);
    let h = bidegree(&q, 3, 5);
    assert_eq!((h["rank"].clone(), h["torsion"].clone()), (Value::from(1), serde_json::json!([])));
    let empty = bidegree(&q, 1, 1);
    assert_eq!((empty["dimension"].clone(), empty["rank"].clone()), (Value::from(0), Value::from(0)));
    for key in ["variant", "parity", "i", "j", "dimension", "rank", "torsion"] {
        assert!(h.get(key).is_some(), "{key}");
    }
}

#[test]
fn homology_with_prime_coefficients() {
    let b = json(&["homology", "--variant", "b", "--parity", "even", "--i-max", "2", "--coefficients", "2"]);
    assert_eq!(b["coefficients"], "2");
    assert_eq!(bidegree(&b, 2, 4)["rank"], 2);
    assert_eq!(bidegree(&b, 2, 3)["rank"], 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "csv", "homology", "--variant", "bstar", "--parity", "odd", "--i-max", "3"];
    let a = run(&args);
    let b = bin().args(args).env("BRACKETDIAG_THREADS", "1").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn time_budget_flags_partial_output() {
    let v = json(&["homology", "--variant", "bstar", "--i-max", "4", "--time-budget", "0.000000001"]);
    assert_eq!(v["partial"], true);
}

#[test]
fn verify_reports_and_exits_zero() {
    let out = run(&["verify", "--suite", "chord", "--complexity", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS") && !text.contains("FAIL"));
    let v = json(&["verify", "--suite", "homotopy", "--complexity", "3"]);
    assert_eq!(v["suite"], "homotopy");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["failures"] == 0));
}

#[test]
fn hopf_commands() {
    let p = json(&["primitive-projection", "--parity", "odd", "--expr", "[1,3].[2,4]"]);
    assert_eq!(p["projection"], "-[1,2].[3,4] + [1,3].[2,4]");
    let s = json(&["antipode", "--parity", "even", "--expr", "[1,2]"]);
    assert_eq!(s["antipode"], "-[1,2]");
    let d = json(&["boundary", "--parity", "odd", "--expr", "[[1,2],3]"]);
    // b1 - b3 with b1 = [1,4].[2,3], b3 = [1,2].[3,4]
    assert_eq!(d["boundary"], "-[1,2].[3,4] + [1,4].[2,3]");
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(run(&["enumerate", "--variant", "c"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "--coefficients", "4"]).status.code(), Some(2));
    assert_eq!(run(&["boundary", "--expr", "[1,"]).status.code(), Some(2));
    assert_eq!(run(&["antipode", "--variant", "gen-b", "--expr", "[1,2]"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "everything"]).status.code(), Some(2));
    let threads = bin().args(["enumerate"]).env("BRACKETDIAG_THREADS", "zero").output().unwrap();
    assert_eq!(threads.status.code(), Some(2));
}

#[test]
fn basis_file_errors() {
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "# comment\n[[1,3],[2,4]\n").unwrap();
    let out = run(&["enumerate", "--variant", "b0", "--basis", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));

    let mut short = tempfile::NamedTempFile::new().unwrap();
    writeln!(short, "[[1,3],[2,4]]").unwrap();
    let target = fixtures().join("bases/b0-even-3-6.txt");
    let out = run(&[
        "matrix", "--variant", "b0", "--i", "3", "--j", "5",
        "--source", short.path().to_str().unwrap(), "--target", target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn basis_file_enumeration() {
    let path = fixtures().join("bases/b0-odd-3-5.txt");
    let v = json(&["enumerate", "--variant", "b0", "--parity", "odd", "--basis", path.to_str().unwrap()]);
    assert_eq!(v["count"], 6);
    assert!(v["diagrams"].as_array().unwrap().iter().all(|d| d["i"] == 3 && d["j"] == 5));
}

/// Golden outputs; set BRACKETDIAG_BLESS=1 to rewrite them.
const GOLDEN: &[(&str, &[&str])] = &[
    ("homology-b-even.json", &["--format", "json", "homology", "--variant", "b", "--parity", "even", "--i-max", "3"]),
    ("homology-b-odd.json", &["--format", "json", "homology", "--variant", "b", "--parity", "odd", "--i-max", "3"]),
    ("homology-b0-even.csv", &["--format", "csv", "homology", "--variant", "b0", "--parity", "even", "--i-max", "3"]),
    ("homology-b0-odd.csv", &["--format", "csv", "homology", "--variant", "b0", "--parity", "odd", "--i-max", "3"]),
    ("matrix-b-even-2-3.txt", &["matrix", "--variant", "b", "--parity", "even", "--i", "2", "--j", "3"]),
    ("matrix-b-odd-2-3.txt", &["matrix", "--variant", "b", "--parity", "odd", "--i", "2", "--j", "3"]),
    (
        "matrix-b0-even-3-4.json",
        &["--format", "json", "matrix", "--variant", "b0", "--parity", "even", "--i", "3", "--j", "4",
          "--source", "fixtures/bases/b0-even-3-4.txt", "--target", "fixtures/bases/b0-even-3-5.txt"],
    ),
    (
        "matrix-b0-even-3-5.json",
        &["--format", "json", "matrix", "--variant", "b0", "--parity", "even", "--i", "3", "--j", "5",
          "--source", "fixtures/bases/b0-even-3-5.txt", "--target", "fixtures/bases/b0-even-3-6.txt"],
    ),
    (
        "matrix-b0-odd-3-4.json",
        &["--format", "json", "matrix", "--variant", "b0", "--parity", "odd", "--i", "3", "--j", "4",
          "--source", "fixtures/bases/b0-odd-3-4.txt", "--target", "fixtures/bases/b0-odd-3-5.txt"],
    ),
    (
        "matrix-b0-odd-3-5.json",
        &["--format", "json", "matrix", "--variant", "b0", "--parity", "odd", "--i", "3", "--j", "5",
          "--source", "fixtures/bases/b0-odd-3-5.txt", "--target", "fixtures/bases/b0-odd-3-6.txt"],
    ),
    ("chord-odd.txt", &["chord", "--parity", "odd", "--max", "5"]),
    ("operad-homology-gerstenhaber.csv", &["--format", "csv", "operad-homology", "--kind", "gerstenhaber", "--arity-max", "4"]),
];

#[test]
fn golden_files() {
    let bless = std::env::var_os("BRACKETDIAG_BLESS").is_some();
    for (name, args) in GOLDEN {
        let out = run(args);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let path = fixtures().join("golden").join(name);
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert!(out.stdout == want, "{name} differs from its golden file");
    }
}
