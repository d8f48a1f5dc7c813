use std::fs;

use sectorlab::cli::{self, EXIT_COUNTEREXAMPLE, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("sectorlab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn roots_formats() {
    let (code, out, _) = run(&["roots", "--coeffs", "-1,3,-3,1"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "1 (×3)\n"));
    let (_, csv, _) = run(&["roots", "--coeffs", "2,-2,1", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("re,im,multiplicity,residual"));
    assert_eq!(csv.lines().count(), 3);
    let (_, json, _) = run(&["roots", "--coeffs", "2,-2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["zeros"].as_array().unwrap().len(), 2);
}

#[test]
fn input_file_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    fs::write(&path, r#"{"roots": {"real": [2.0], "pairs": [[1.0, 1.0]]}}"#).unwrap();
    let (code, out, _) = run(&["roots", "--input", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("2 (×1)"), "{out}");

    assert_eq!(run(&["roots", "--coeffs", "1,2", "--input", "x.json"]).0, EXIT_INPUT);
    assert_eq!(run(&["roots", "--input", "/nonexistent/p.json"]).0, EXIT_INPUT);
    assert_eq!(run(&["roots", "--coeffs", "5"]).0, EXIT_INPUT);
    assert_eq!(run(&["plot", "--coeffs", "2,-2,1", "--show-discs"]).0, EXIT_INPUT);
    assert_eq!(run(&["verify", "double-sector"]).0, EXIT_INPUT);
}

#[test]
fn apply_reports_sectors() {
    let (code, out, _) = run(&["apply", "--coeffs", "2,-2,1", "--op", "gauss:alpha=0.5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("theta_before: 0.7853981634"), "{out}");
    assert!(out.contains("predicted: 0.6414032478"), "{out}");
    let (code, _, err) = run(&["apply", "--coeffs", "2,-2,1", "--op", "cosstep:alpha=2,N=1"]);
    assert_eq!(code, EXIT_HYPOTHESIS);
    assert!(err.contains("hypothesis"), "{err}");
}

#[test]
fn sector_notes_left_half_plane() {
    let (code, out, _) = run(&["sector", "--coeffs", "1,0,1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("no sector"), "{out}");
    assert!(out.contains("double sector: 1.5707963268"), "{out}");
    let (_, out, _) = run(&["sector", "--coeffs", "2,-2,1", "--alpha", "0.39269908169872414"]);
    assert!(out.contains("center 1.847759065"), "{out}");
}

#[test]
fn verify_writes_reproducible_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let (code, out, _) = run(&["verify", "zsro", "--trials", "50", "--seed", "3", "-o", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("counterexample: none"));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert_eq!(report["theorem_id"], "zsro");
    assert_eq!(report["trials"], 50);
}

#[test]
fn sign_flipping_sequence_is_a_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cx.json");
    let (code, out, _) = run(&[
        "search", "--op", "explicit:1,-1,1,1,1,1,1,1,1,1,1,1,1,1", "--trials", "20", "--degree-max", "8",
        "-o", path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_COUNTEREXAMPLE, "{out}");
    assert!(out.contains("certificate:"), "{out}");
    let report: serde_json::Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    assert!(report["counterexample"].is_object());
}

#[test]
fn negative_numbers_and_tolerances() {
    let (code, out, err) = run(&["verify", "lms2", "--lambda", "-0.5", "--rotation", "-1.2", "--trials", "10"]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert_eq!(run(&["verify", "zsro", "--tol-angle", "-1", "--trials", "5"]).0, EXIT_INPUT);
    let (code, out, _) = run(&["roots", "--coeffs", "-2,1"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "2 (×1)\n"));
}

#[test]
fn search_and_plot() {
    let (code, out, _) = run(&["search", "--alphas", "0.3", "--powers", "1.5,2", "--trials", "20"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("increasing-toward-one"), "{out}");
    let (code, svg, _) = run(&["plot", "--coeffs", "2,-2,1", "--op", "gauss:alpha=0.5", "--alpha", "0.3", "--show-discs"]);
    assert_eq!(code, EXIT_OK);
    assert!(svg.contains("class=\"disc\""));
    assert!(svg.contains("rays predicted"));
    let (_, svg, _) = run(&["plot", "--coeffs", "1,0,1"]);
    assert!(svg.contains("no sector"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).0, EXIT_OK);
    assert_eq!(run(&["--version"]).0, EXIT_OK);
}
