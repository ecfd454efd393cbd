use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rzeta"))
}

fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn every_bundled_problem_agrees() {
    let mut seen = 0;
    for entry in std::fs::read_dir(problems_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        seen += 1;
        let out = bin().arg("compute").arg(&path).arg("--json").output().unwrap();
        let report = json_of(&out);
        assert_eq!(report["agreement"], json!(true), "{}", path.display());
        let expected = if path.file_stem().unwrap() == "abelian_rotation" { 3 } else { 0 };
        assert_eq!(out.status.code(), Some(expected), "{}", path.display());
    }
    assert!(seen >= 10);
}

#[test]
fn minus_two_report() {
    let out = run_stdin(&["compute", "--json"], r#"{"kind":"abelian","matrix":[[-2]]}"#);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    let factors = r["zeta"]["factors"].as_array().unwrap();
    assert!(factors.contains(&json!({"coeffs": [1, 1], "exp": 1})));
    assert!(factors.contains(&json!({"coeffs": [1, -2], "exp": -1})));
    let counts: Vec<i64> = r["counts"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_i64().unwrap())
        .collect();
    let expected: Vec<i64> = (1..=12).map(|n: u32| (1 - (-2i64).pow(n)).abs()).collect();
    assert_eq!(counts, expected);
    assert_eq!(r["functional_equation"]["epsilon"], json!("-1/2"));
    assert_eq!(r["torsion"]["entries"][0]["from_zeta"], json!(2.0));
    for section in ["counts", "zeta", "congruences", "functional_equation", "torsion"] {
        assert!(r[section]["formula"].is_string(), "{section}");
        assert!(r[section]["oracle"].is_string(), "{section}");
    }
}

#[test]
fn verbs_select_sections() {
    let doc = r#"{"kind":"abelian","matrix":[[3]]}"#;
    let zeta = json_of(&run_stdin(&["zeta", "--json", "--order", "5"], doc));
    assert_eq!(zeta["counts"]["entries"].as_array().unwrap().len(), 5);
    assert!(zeta.get("torsion").is_none());
    let torsion = json_of(&run_stdin(&["torsion", "--json"], doc));
    assert!(torsion.get("counts").is_none());
    assert!(torsion["torsion"]["entries"].is_array());

    let bounds = run_stdin(&["bounds", "--json"], r#"{"kind":"free","rank":2,"images":["ab","a"]}"#);
    assert_eq!(bounds.status.code(), Some(0));
    let b = json_of(&bounds);
    assert_eq!(b["fox"]["bound_norm"], json!("1/3"));
    assert!((b["fox"]["bound_spectral"].as_f64().unwrap() - 0.618_033_988_749_895).abs() < 1e-9);

    assert_eq!(run_stdin(&["bounds"], doc).status.code(), Some(2));
}

#[test]
fn text_output_is_default() {
    let out = run_stdin(&["compute"], r#"{"kind":"finite","group":{"catalog":"S3"}}"#);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("overall: agree"), "{text}");
}

#[test]
fn exit_codes() {
    let infinite = run_stdin(&["check"], r#"{"kind":"abelian","matrix":[[1]]}"#);
    assert_eq!(infinite.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&infinite.stderr).contains("infinite Reidemeister"));

    let schema = run_stdin(&["check"], r#"{"kind":"abelian","matrix":[[1,"x"]]}"#);
    assert_eq!(schema.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&schema.stderr).contains("matrix"));

    let not_json = run_stdin(&["compute"], "not json");
    assert_eq!(not_json.status.code(), Some(2));

    let bad_hom = run_stdin(
        &["check"],
        r#"{"kind":"finite","group":{"catalog":"S3"},"images":[[1,0,2],[1,0,2]]}"#,
    );
    assert_eq!(bad_hom.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_hom.stderr).contains("homomorphism"));
}

#[test]
fn group_order_cap_override() {
    let doc = r#"{"kind":"finite","group":{"catalog":"S4"}}"#;
    assert_eq!(run_stdin(&["check", "--max-group-order", "10"], doc).status.code(), Some(2));
    let mut cmd = bin();
    cmd.arg("check").env("RZETA_MAX_GROUP_ORDER", "10");
    let path = problems_dir().join("finite_s4_permutations.json");
    assert_eq!(cmd.arg(&path).output().unwrap().status.code(), Some(2));
    assert_eq!(run_stdin(&["check", "--max-group-order", "24"], doc).status.code(), Some(0));
}

#[test]
fn canonical_form_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(problems_dir()).unwrap() {
        let path = entry.unwrap().path();
        let once = bin().arg("check").arg("--json").arg(&path).output().unwrap();
        assert_eq!(once.status.code(), Some(0), "{}", path.display());
        let copy = dir.path().join("doc.json");
        std::fs::write(&copy, &once.stdout).unwrap();
        let twice = bin().arg("check").arg("--json").arg(&copy).output().unwrap();
        assert_eq!(once.stdout, twice.stdout, "{}", path.display());
    }
}

#[test]
fn disagreement_maps_to_four() {
    use rzeta::problem::ProblemError;
    let e = ProblemError::Domain(rzeta::Error::OracleDisagreement("test".into()));
    assert_eq!(e.exit_code(), 4);
    let p = rzeta::problem::parse_problem(r#"{"kind":"abelian","matrix":[[-2]]}"#).unwrap();
    let mut report = rzeta::problem::run(&p, rzeta::problem::Scope::Zeta).unwrap();
    report.agreement = false;
    assert_eq!(report.exit_code(), 4);
}
