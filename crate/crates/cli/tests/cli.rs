use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const A2: &str = r#"{"vertices":["1","2"],"arrows":[{"name":"rho","tail":"1","head":"2"}]}"#;
const A4: &str = r#"{"vertices":["1","2","3","4"],"arrows":[
    {"name":"a","tail":"1","head":"2"},{"name":"b","tail":"3","head":"2"},{"name":"c","tail":"3","head":"4"}]}"#;
const LOOP: &str = r#"{"vertices":["1"],"arrows":[{"name":"x","tail":"1","head":"1"}]}"#;

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverhall"))
        .args(args)
        .env_remove("QUIVERHALL_BUDGET")
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_of(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    v["error"].clone()
}

#[test]
fn classify_finite_and_loop() {
    let s = Scratch::new();
    let a4 = s.file("a4.json", A4);
    assert_eq!(
        ok_json(&["classify", "-q", p(&a4)]),
        json!({"verdict": "finite", "graph": "A4"})
    );
    let lp = s.file("loop.json", LOOP);
    let v = ok_json(&["classify", "-q", p(&lp)]);
    assert_eq!(v["verdict"], "wild");
    assert_eq!(v["notes"].as_array().unwrap().len(), 1);
}

#[test]
fn roots_of_a2() {
    let s = Scratch::new();
    let a2 = s.file("a2.json", A2);
    let v = ok_json(&["roots", "-q", p(&a2)]);
    assert_eq!(v["count"], 3);
    let tsv = run(&["roots", "-q", p(&a2), "--format", "tsv"]);
    assert_eq!(String::from_utf8(tsv.stdout).unwrap().lines().count(), 4);
}

#[test]
fn serre_check_holds_on_a2() {
    let s = Scratch::new();
    let a2 = s.file("a2.json", A2);
    let v = ok_json(&["serre-check", "-q", p(&a2), "--vertices", "1,2", "--prime", "2"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["residual"], json!([]));
}

#[test]
fn hall_mul_by_files_and_word_agree() {
    let s = Scratch::new();
    let a2 = s.file("a2.json", A2);
    let simple = |d1: u32, d2: u32| {
        json!({"quiver": serde_json::from_str::<Value>(A2).unwrap(), "field": "F3",
               "dims": {"1": d1, "2": d2}, "maps": {}})
        .to_string()
    };
    let s1 = s.file("s1.json", &simple(1, 0));
    let s2 = s.file("s2.json", &simple(0, 1));
    let by_files = ok_json(&["hall-mul", "--left", p(&s1), "--right", p(&s2)]);
    let by_word = ok_json(&["hall-mul", "-q", p(&a2), "--prime", "3", "--word", "1,2"]);
    assert_eq!(by_files, by_word);
    // both extensions of S1 by S2 appear, each with coefficient v^-1 = v/3
    let terms = by_files.as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for t in terms {
        assert_eq!(t["coeff"], json!({"v_parity": 1, "q_poly": "1", "q_denom_pow": 1}));
    }
}

#[test]
fn generic_serre_residual_vanishes() {
    let s = Scratch::new();
    let a2 = s.file("a2.json", A2);
    let v = ok_json(&["generic", "-q", p(&a2), "--serre", "1,2", "--primes", "2,3,5,7,11", "--degree-bound", "2"]);
    assert_eq!(v["zero"], true);
    let out = run(&["generic", "-q", p(&a2), "--word", "1,2", "--primes", "2,3,3,5,7"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dim_check_and_lambda_count() {
    let s = Scratch::new();
    let a2 = s.file("a2.json", A2);
    let v = ok_json(&["dim-check", "-q", p(&a2), "--nu", "1,1"]);
    assert_eq!(v["equal"], true);
    assert_eq!(v["hall_dim"], 2);
    let v = ok_json(&["lambda-count", "--quiver", p(&a2), "--dims", "1,1", "--prime", "2"]);
    assert_eq!(v["count"], 3);
}

#[test]
fn stable_check() {
    let s = Scratch::new();
    let point = |t: u32| {
        json!({"quiver": serde_json::from_str::<Value>(A2).unwrap(), "field": "F2",
               "dims": {"1": 1, "2": 0}, "maps": {},
               "framing": {"dims": {"1": 1, "2": 0}, "maps": {"1": [[t]]}}})
        .to_string()
    };
    let stable = s.file("stable.json", &point(1));
    let unstable = s.file("unstable.json", &point(0));
    assert_eq!(ok_json(&["stable-check", "--point", p(&stable)])["stable"], true);
    assert_eq!(ok_json(&["stable-check", "--point", p(&unstable)])["stable"], false);
}

#[test]
fn decompose_reports_summands() {
    let s = Scratch::new();
    let rep = json!({"quiver": serde_json::from_str::<Value>(A2).unwrap(), "field": "F5",
                     "dims": {"1": 2, "2": 1}, "maps": {"rho": [[1, 0]]}});
    let f = s.file("rep.json", &rep.to_string());
    let v = ok_json(&["decompose", "--rep", p(&f)]);
    assert_eq!(v["count"], 2);
}

#[test]
fn budget_errors_exit_2() {
    let s = Scratch::new();
    let a2 = s.file("a2.json", A2);
    let args = ["iso-classes", "-q", p(&a2), "--dims", "2,2", "--prime", "3"];
    let out = run(&[&["--budget", "10"], &args[..]].concat());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["kind"], "budget");

    let out = Command::new(env!("CARGO_BIN_EXE_quiverhall"))
        .args(args)
        .env("QUIVERHALL_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(run(&args).status.success());
}

#[test]
fn usage_errors_exit_1() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["kind"], "usage");

    let out = run(&["classify", "-q", "/nonexistent/q.json"]);
    assert_eq!(out.status.code(), Some(1));

    let s = Scratch::new();
    let a2 = s.file("a2.json", A2);
    let out = run(&["serre-check", "-q", p(&a2), "--vertices", "1,7", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["serre-check", "-q", p(&a2), "--vertices", "1,2", "--prime", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["paths", "-q", p(&s.file("loop.json", LOOP))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(run(&["--help"]).status.success());
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let s = Scratch::new();
    let a2 = s.file("a2.json", A2);
    let args = ["iso-classes", "-q", p(&a2), "--dims", "2,2", "--prime", "2"];
    let one = run(&[&["--threads", "1"], &args[..]].concat());
    let many = run(&[&["--threads", "4"], &args[..]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(run(&args).stdout, one.stdout);
}
