use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bures"))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

struct Files {
    _dir: TempDir,
    ident: String,
    coupled: String,
    diag: String,
    three: String,
    bad: String,
    indefinite: String,
}

fn files() -> Files {
    let dir = TempDir::new().unwrap();
    let s = |p: PathBuf| p.to_str().unwrap().to_owned();
    Files {
        ident: s(write(&dir, "i.csv", "1,0\n0,1\n")),
        coupled: s(write(&dir, "c.csv", "2,1\n1,2\n")),
        diag: s(write(&dir, "d.csv", "4,0\n0,9\n")),
        three: s(write(&dir, "t.csv", "1,0,0\n0,1,0\n0,0,1\n")),
        bad: s(write(&dir, "b.csv", "1,0\n0,abc\n")),
        indefinite: s(write(&dir, "n.csv", "1,2\n2,1\n")),
        _dir: dir,
    }
}

#[test]
fn bounds_identity_vs_coupled() {
    let f = files();
    let out = run(&["bounds", "--cov-a", &f.ident, "--cov-b", &f.coupled, "--same-generator"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let expect = 3f64.sqrt() - 1.0;
    assert!((v["gelbrich"].as_f64().unwrap() - expect).abs() < 1e-12);
    assert!((v["closed_form"].as_f64().unwrap() - expect).abs() < 1e-12);
    assert!((v["eigenbasis_bound"].as_f64().unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-12);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn bounds_without_shared_generator_has_no_closed_form() {
    let f = files();
    let out = run(&["bounds", "--cov-a", &f.ident, "--cov-b", &f.diag]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["closed_form"].is_null());
    // commuting diagonal pair: every bound equals sqrt((1-2)² + (1-3)²)
    let w = 5f64.sqrt();
    for k in ["gelbrich", "eigenbasis_bound", "diag_bound"] {
        assert!((v[k].as_f64().unwrap() - w).abs() < 1e-12, "{k}");
    }
}

#[test]
fn minimizer_attains_bound() {
    let f = files();
    let out = run(&["minimizer", "--cov-a", &f.coupled, "--target", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let m = &v["minimizer"];
    // eigenvectors of [[2,1],[1,2]] are (1,1)/√2 (λ=3) and (1,-1)/√2 (λ=1)
    assert!((m[0][0].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert!((m[0][1].as_f64().unwrap() + 0.5).abs() < 1e-12);
    let g = v["gelbrich"].as_f64().unwrap();
    let e = v["eigenbasis_bound"].as_f64().unwrap();
    assert!((g - e).abs() < 1e-10);
}

#[test]
fn exit_codes() {
    let f = files();
    let code = |a: &[&str]| run(a).status.code();
    assert_eq!(code(&["bounds", "--cov-a", &f.bad, "--cov-b", &f.ident]), Some(2));
    assert_eq!(code(&["bounds", "--cov-a", "/nonexistent.csv", "--cov-b", &f.ident]), Some(2));
    assert_eq!(code(&["minimizer", "--cov-a", &f.ident, "--target", "1,x"]), Some(2));
    assert_eq!(code(&["bounds", "--cov-a", &f.ident, "--cov-b", &f.three]), Some(3));
    assert_eq!(code(&["bounds", "--cov-a", &f.indefinite, "--cov-b", &f.ident]), Some(3));
    assert_eq!(code(&["minimizer", "--cov-a", &f.ident, "--target", "1,2,3"]), Some(3));
    assert_eq!(code(&["minimizer", "--cov-a", &f.ident, "--target", "1,-2"]), Some(3));
    let emp = |extra: &[&str]| {
        let mut a = vec!["empirical", "--cov-a", &f.ident, "--cov-b", &f.coupled, "--seed", "1"];
        a.extend_from_slice(extra);
        code(&a)
    };
    assert_eq!(emp(&["--generator", "student-t", "--df", "1.5", "--n", "8", "--trials", "1"]), Some(3));
    assert_eq!(emp(&["--generator", "student-t", "--n", "8", "--trials", "1"]), Some(3));
    assert_eq!(emp(&["--generator", "gaussian", "--n", "8", "--trials", "0"]), Some(3));
    assert_eq!(emp(&["--generator", "gaussian", "--n", "4096", "--trials", "1"]), Some(4));
    assert_eq!(emp(&["--generator", "gaussian", "--n", "16", "--trials", "2"]), Some(0));
}

#[test]
fn empirical_is_reproducible_and_above_gelbrich() {
    let f = files();
    let args = [
        "empirical", "--cov-a", &f.ident, "--cov-b", &f.coupled, "--generator", "student-t", "--df", "5",
        "--n", "64", "--seed", "11", "--trials", "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let trials = v["empirical"]["per_trial"].as_array().unwrap();
    assert_eq!(trials.len(), 3);
    assert_eq!(trials[2]["seed"], 11 ^ 2);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_quick_is_byte_identical() {
    let a = run(&["verify", "--seed", "42", "--quick"]);
    let b = run(&["verify", "--seed", "42", "--quick"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}
