use std::path::{Path, PathBuf};

use serde_json::Value;
use tempfile::TempDir;
use tropdef::cli::run;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Self { dir: tempfile::tempdir().unwrap() }
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }
}

fn tropdef(args: &[&str]) -> (i32, String) {
    let mut all = vec!["tropdef"];
    all.extend_from_slice(args);
    run(all)
}

fn json(out: &str) -> Value {
    serde_json::from_str(out).unwrap_or_else(|e| panic!("{e}: {out}"))
}

const STRONG: &str = "vars: x, y\n(x+1)*(y+1)\n(x-1)*(y+1)\n";
const F1: &str = "vars: x, y\nx + t^(-1)*y + 2\nx + y + 1\n";
const F2: &str = "vars: x, y\nx + y + 1\n(t^(-1) - 1)*y + 1\n";

#[test]
fn strong_positive_dimensional_and_reverify() {
    let f = Files::new();
    let sys = f.put("strong.txt", STRONG);
    let basis = f.put("basis.txt", "vars: x, y\ny + 1\n");
    let oracle = format!("basis:{basis}");
    let (code, out) = tropdef(&["defect", "strong", &sys, "--dim", "1", "--v", "0", "--oracle", &oracle]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert_eq!(v["status"], "found");
    assert_eq!(v["certificate"]["mode"], "positive-dimensional");
    assert!(v["assumptions"].as_array().unwrap().iter().any(|a| a == "SG asserted"));
    let cert = f.put("cert.json", &serde_json::to_string_pretty(&v["certificate"]).unwrap());
    let (code, out) = tropdef(&["verify", &sys, "--cert", &cert, "--oracle", &oracle]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["accepted"], true);
}

#[test]
fn strong_not_found_away_from_zero() {
    let f = Files::new();
    let sys = f.put("strong.txt", STRONG);
    let basis = f.put("basis.txt", "vars: x, y\ny + 1\n");
    let (code, out) =
        tropdef(&["defect", "strong", &sys, "--dim", "1", "--v", "-3/2", "--oracle", &format!("basis:{basis}")]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["status"], "not-found");
    let (code, out) = tropdef(&["defect", "strong", &sys, "--dim", "1", "--v", "1", "--oracle", "gb"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["status"], "inconclusive");
}

#[test]
fn weak_on_tropical_basis_with_samples() {
    let f = Files::new();
    let sys = f.put("f2.txt", F2);
    let oracle = format!("basis:{sys}");
    let args = ["defect", "weak", &sys, "--dim", "1", "--sample", "--seed", "7", "--count", "4", "--oracle", &oracle];
    let (code, out) = tropdef(&args);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 4);
    for s in samples {
        assert_eq!(s["status"], "not-found");
        let lambda = s["subspace"]["lambda"][0].as_str().unwrap();
        let k: i64 = lambda.parse().unwrap();
        assert!(k != 0 && k.abs() <= tropdef::cli::SAMPLE_RANGE);
    }
}

#[test]
fn weak_high_dim_on_f1() {
    let f = Files::new();
    let sys = f.put("f1.txt", F1);
    let basis = f.put("f2.txt", F2);
    let (code, out) = tropdef(&["defect", "weak", &sys, "--dim", "0", "--oracle", &format!("basis:{basis}")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["line"], "high-dim");
    assert_eq!(v["oracle_queries"], 0);
    assert_eq!(v["certificate"]["weights"][0], serde_json::json!(["0", "1"]));
}

#[test]
fn sampling_is_deterministic() {
    let f = Files::new();
    let sys = f.put("strong.txt", STRONG);
    let args = ["defect", "strong", &sys, "--dim", "1", "--sample", "--seed", "11", "--count", "6", "--transform", "random"];
    let a = tropdef(&args);
    let b = tropdef(&args);
    assert_eq!(a, b);
    let v = json(&a.1);
    assert_eq!(v["samples"].as_array().unwrap().len(), 6);
    let c = tropdef(&["defect", "strong", &sys, "--dim", "1", "--sample", "--seed", "12", "--count", "6", "--transform", "random"]);
    assert_ne!(a.1, c.1);
}

#[test]
fn transformed_run_reports_pulled_back_tuple() {
    let f = Files::new();
    let sys = f.put("strong.txt", STRONG);
    let basis = f.put("basis.txt", "vars: x, y\ny + 1\n");
    // x ↦ ab, y ↦ b
    let (code, out) = tropdef(&[
        "defect", "strong", &sys, "--dim", "1", "--v", "-1", "--oracle", &format!("basis:{basis}"), "--transform", "[[1,0],[1,1]]",
    ]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert_eq!(v["line"], "variety-exclusion");
    assert_eq!(v["certificate"]["weights"][0], serde_json::json!(["-1", "1"]));
    assert_eq!(v["original_tuple"][0], serde_json::json!(["0", "1"]));
    let transformed = f.put("t.txt", v["transformed_system"].as_str().unwrap());
    let cert = f.put("c.json", &serde_json::to_string(&v["certificate"]).unwrap());
    let (code, out) = tropdef(&["verify", &transformed, "--cert", &cert]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn singleton_command() {
    let f = Files::new();
    let sys = f.put("h.txt", "vars: x, y, h\n(x+h)*(y+h)\n(x-h)*(y+h)\n");
    let (code, out) = tropdef(&["singleton", &sys, "--tuple", r#"[["0","0","0"],["0","1","0"]]"#]);
    assert_eq!(code, 0, "{out}");
    let w = json(&out)["weight"].as_array().unwrap().len();
    assert_eq!(w, 3);
    let (code, _) = tropdef(&["singleton", &f.put("v.txt", F1), "--tuple", r#"[["0","1"]]"#]);
    assert_eq!(code, 1);
}

#[test]
fn builtin_gaussoid_certificate_verifies() {
    let f = Files::new();
    let (code, text) = tropdef(&["gen", "gaussoid", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 121);
    let sys = f.put("t4.txt", &text);
    let (code, out) = tropdef(&["verify", &sys, "--cert", "builtin:gaussoid"]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert_eq!(v["accepted"], true);
    assert_eq!(v["variety_check"], "witness-monomial");
}

#[test]
fn gen_cox_and_cert() {
    let (code, text) = tropdef(&["gen", "cox"]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 11);
    let (code, out) = tropdef(&["gen", "cox", "--d", "1,2,4,4,16,32"]);
    assert_eq!(code, 1);
    assert!(out.contains("d3 - d4"), "{out}");
    let (code, out) = tropdef(&["gen", "cert", "cox"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["witness_monomial"], serde_json::json!({"E6": 1, "F56": 1, "G6": 1}));
}

#[test]
fn cox_full_file_mode() {
    let f = Files::new();
    let (_, text) = tropdef(&["gen", "cox"]);
    // Re-read the ten trinomials with symbolic parameters replaced by numbers.
    let path = f.put("cox.txt", &text);
    let (code, out) = tropdef(&["gen", "cox", "--full", &path]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out, text);
    let bad = f.put("bad.txt", "vars: E1, E2\nE1*E2\n");
    let (code, _) = tropdef(&["gen", "cox", "--full", &bad]);
    assert_eq!(code, 1);
}

#[test]
fn input_errors_exit_one() {
    let f = Files::new();
    let sys = f.put("bad.txt", "vars: x\nx + y\n");
    let (code, out) = tropdef(&["prevariety", &sys]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert!(v["error"].as_str().unwrap().contains("line 2, column 5"));
    assert!(v["assumptions"].is_array());
    let (code, _) = tropdef(&["defect", "strong"]);
    assert_eq!(code, 1);
    let (code, _) = tropdef(&["prevariety", "/nonexistent/file"]);
    assert_eq!(code, 1);
}

#[test]
fn prevariety_with_seed_and_abort() {
    let f = Files::new();
    let sys = f.put("f1.txt", F1);
    let seed = f.put("seed.json", r#"{"inequalities": [["0", "-1", "-5"]]}"#);
    let (code, out) = tropdef(&["prevariety", &sys, "--seed-poly", &seed, "--abort-above-dim", "0"]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert_eq!(v["cells"].as_array().unwrap().len(), 1);
    assert_eq!(v["aborted"]["dimension"], 1);
    let _ = Path::new(".");
}
