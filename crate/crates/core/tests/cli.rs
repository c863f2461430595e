use std::path::Path;

use ewt::cli::{run, EXIT_DIMENSION, EXIT_MALFORMED, EXIT_OK, EXIT_USAGE};
use ewt::io::MatrixFile;
use ewt::states::flip;
use ewt::tensor::max_abs_diff;
use ewt::witnesses::w_abc;
use serde_json::Value;
use tempfile::TempDir;

fn ewt(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ewt").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn make(dir: &TempDir, name: &str, family: &str, params: &str) -> String {
    let path = dir.path().join(name);
    let p = path.to_str().unwrap().to_string();
    let (code, _, err) = ewt(&["make", "--family", family, "--params", params, "--out", &p]);
    assert_eq!(code, EXIT_OK, "{err}");
    p
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn make_round_trips_exactly() {
    let dir = TempDir::new().unwrap();
    let p = make(&dir, "w.json", "w_abc", "a=0.3,b=1.1,c=0.6");
    let loaded = MatrixFile::load(&p).unwrap().to_operator().unwrap();
    let direct = w_abc(0.3, 1.1, 0.6).unwrap().op;
    assert!(max_abs_diff(loaded.mat(), direct.mat()) <= 1e-15);

    let p = make(&dir, "f.json", "flip", "d=3");
    assert_eq!(MatrixFile::load(&p).unwrap().to_operator().unwrap().mat(), flip(3).mat());
}

#[test]
fn make_to_stdout_carries_metadata() {
    let (code, out, _) = ewt(&["make", "--family", "werner", "--params", "d=2,p=0.3"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["kind"], "state");
    assert_eq!(v["meta"]["family"], "werner");
}

#[test]
fn classify_w110_is_indecomposable_ew() {
    let dir = TempDir::new().unwrap();
    let p = make(&dir, "w.json", "w_abc", "a=1,b=1,c=0");
    let (code, out, err) = ewt(&["classify", &p, "--json", "--seed", "3"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v = json(&out);
    assert_eq!(v["is_ew"], true);
    assert_eq!(v["is_positive_operator"], false);
    assert_eq!(v["decomposable"], "no_analytic");
    assert_eq!(v["family_verified"], true);
    assert_eq!(v["schmidt_witness_order"], 2);
    assert_eq!(v["spanning"]["dimension"], 7);
}

#[test]
fn classify_flip2_spa_and_spanning() {
    let dir = TempDir::new().unwrap();
    let p = make(&dir, "f.json", "flip", "d=2");
    let (code, out, _) = ewt(&["classify", &p, "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    let p_star = v["spa"]["p_star"].as_f64().unwrap();
    assert!((p_star - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["spanning"]["dimension"], 4);
    assert_eq!(v["decomposable"], "yes_analytic");
}

#[test]
fn classify_positive_state() {
    let dir = TempDir::new().unwrap();
    let p = make(&dir, "p.json", "max_entangled", "d=2");
    let (code, out, _) = ewt(&["classify", &p, "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["is_positive_operator"], true);
    assert_eq!(v["is_ew"], false);
}

#[test]
fn same_seed_gives_identical_json() {
    let dir = TempDir::new().unwrap();
    let p = make(&dir, "w.json", "w_abc", "a=0.5,b=0.5,c=1");
    let first = ewt(&["classify", &p, "--json", "--seed", "11", "--restarts", "40"]);
    let second = ewt(&["classify", &p, "--json", "--seed", "11", "--restarts", "40"]);
    assert_eq!(first.0, EXIT_OK);
    assert_eq!(first.1, second.1);
}

#[test]
fn text_report_is_readable() {
    let dir = TempDir::new().unwrap();
    let p = make(&dir, "r.json", "reduction", "d=3");
    let (code, out, _) = ewt(&["classify", &p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("entanglement witness: true"));
    assert!(out.contains("family: reduction (verified: true)"));
}

#[test]
fn detect_flip_on_werner() {
    let dir = TempDir::new().unwrap();
    let w = make(&dir, "f.json", "flip", "d=2");
    let rho = make(&dir, "rho.json", "werner", "d=2,p=0.3");
    let (code, out, _) = ewt(&["detect", &w, &rho, "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert!((v["trace"].as_f64().unwrap() + 0.4).abs() < 1e-12);
    assert_eq!(v["detected"], true);
}

#[test]
fn sweep_finds_werner_crossing() {
    let dir = TempDir::new().unwrap();
    let w = make(&dir, "f.json", "flip", "d=3");
    let (code, out, _) = ewt(&["sweep", "--family", "werner", "--witness", &w, "--steps", "8", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    let crossings = v["zero_crossings"].as_array().unwrap();
    assert_eq!(crossings.len(), 1);
    assert!((crossings[0].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn spa_and_schmidt_commands() {
    let dir = TempDir::new().unwrap();
    let w = make(&dir, "r.json", "reduction", "d=2");
    let (code, out, _) = ewt(&["spa", &w]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("p* = 0.333333333333333"));

    let s = make(&dir, "s.json", "max_entangled", "d=3");
    let (code, out, _) = ewt(&["schmidt", &s, "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["schmidt_rank"], 3);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(ewt(&["make", "--family", "nope"]).0, EXIT_USAGE);
    assert_eq!(ewt(&["make", "--family", "flip", "--params", "d=1"]).0, EXIT_USAGE);
    assert_eq!(ewt(&["frobnicate"]).0, EXIT_USAGE);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(ewt(&["classify", bad.to_str().unwrap()]).0, EXIT_MALFORMED);
    let missing = dir.path().join("missing.json");
    assert_eq!(ewt(&["classify", missing.to_str().unwrap()]).0, EXIT_MALFORMED);

    let w3 = make(&dir, "f3.json", "flip", "d=3");
    let rho2 = make(&dir, "rho2.json", "werner", "d=2,p=0.5");
    let (code, _, err) = ewt(&["detect", &w3, &rho2]);
    assert_eq!(code, EXIT_DIMENSION);
    assert!(err.starts_with("error:"));

    // a non-Hermitian matrix is rejected before any computation
    let mut f = MatrixFile::load(&w3).unwrap();
    f.re[0][1] = 5.0;
    let skew = dir.path().join("skew.json");
    f.save(&skew).unwrap();
    assert_eq!(ewt(&["spa", skew.to_str().unwrap()]).0, EXIT_MALFORMED);
    assert!(Path::new(&w3).exists());
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = ewt(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("classify"));
}
