use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use frobdiv::verify::{
    AxKatzReport, ExcisionReport, PolarReport, ProbeReport, ProjectiveReport, Verdict,
};
use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: tempfile::tempdir().expect("temp dir"),
        }
    }

    fn variety(&self, name: &str, body: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, body).expect("write variety file");
        path
    }
}

fn frobdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobdiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_file(args: &[&str], file: &Path, extra: &[&str]) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(file.to_str().unwrap());
    all.extend_from_slice(extra);
    frobdiv(&all)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const HYPERPLANE_P2: &str = r#"{"p": 3, "e": 1, "ambient": "projective", "n": 2, "polys": ["x0"]}"#;
const HYPERBOLA: &str = r#"{"p": 3, "e": 1, "ambient": "affine", "n": 2, "polys": ["x1*x2 - 1"]}"#;
const AFFINE_LINE: &str = r#"{"p": 3, "e": 1, "ambient": "affine", "n": 2, "polys": ["x1"]}"#;

#[test]
fn mu_table() {
    let o = frobdiv(&[
        "mu",
        "--n",
        "5",
        "--degrees",
        "1,1",
        "--jmax",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mus: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["mu"].as_u64().unwrap())
        .collect();
    assert_eq!(mus, vec![3, 3, 3]);

    let o = frobdiv(&["mu", "--n", "3", "--degrees", "2"]);
    assert_eq!(code(&o), 0);
    // mu_0(3; 2) = ceil(1/2) = 1, mu_1 = 1, mu_2 = 2, mu_3 = 3
    let rows: Vec<String> = stdout(&o)
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    assert_eq!(rows, vec!["0 1", "1 1", "2 2", "3 3"]);
}

#[test]
fn mu_rejects_bad_degrees() {
    let o = frobdiv(&["mu", "--n", "3", "--degrees", "0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("error"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&frobdiv(&["verify"])), 2);
    assert_eq!(code(&frobdiv(&["frobnicate"])), 2);
    assert_eq!(code(&frobdiv(&["count", "missing.json", "--k", "1"])), 2);
}

#[test]
fn count_and_complement() {
    let f = Fixture::new();
    let file = f.variety("hyperbola.json", HYPERBOLA);
    let o = run_file(&["--format", "json", "count"], &file, &["--k", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"].as_u64(), Some(8));
    let o = run_file(&["count"], &file, &["--k", "1", "--complement"]);
    assert!(
        stdout(&o).contains("#complement over F_3^1: 7"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn zeta_of_hyperbola() {
    let f = Fixture::new();
    let file = f.variety("hyperbola.json", HYPERBOLA);
    let o = run_file(&["zeta"], &file, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(
        stdout(&o).contains("Z(X, T) = (1 - T)/(1 - 3T)"),
        "{}",
        stdout(&o)
    );
    let o = run_file(&["zeta", "--format", "json"], &file, &[]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["zeta"]["num"], serde_json::json!([1, -1]));
    assert_eq!(v["zeta"]["den"], serde_json::json!([1, -3]));
}

#[test]
fn zeta_budget_is_a_computational_failure() {
    let f = Fixture::new();
    let file = f.variety(
        "tight.json",
        r#"{"p": 3, "e": 1, "ambient": "affine", "n": 3, "polys": ["x1^2 + x2^2 + x3^2 - 1"], "budget": 10}"#,
    );
    let o = run_file(&["zeta"], &file, &[]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("budget"), "{}", stderr(&o));
}

#[test]
fn zeta_bound_too_small() {
    let f = Fixture::new();
    let file = f.variety(
        "quadric.json",
        r#"{"p": 3, "e": 1, "ambient": "projective", "n": 3, "polys": ["x0^2 + x1^2 + x2^2 + x3^2"]}"#,
    );
    let o = run_file(&["zeta"], &file, &["--bound", "1"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("stabilize"), "{}", stderr(&o));
}

#[test]
fn malformed_polynomial_reports_position() {
    let f = Fixture::new();
    let file = f.variety(
        "bad.json",
        "{\"p\": 3, \"e\": 1, \"ambient\": \"affine\", \"n\": 2,\n \"polys\": [\"x1 + (x2\"]}",
    );
    let o = run_file(&["verify", "ax-katz"], &file, &[]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(
        err.contains("polys[0]") && err.contains("position"),
        "{err}"
    );
    assert!(err.contains("line 2"), "{err}");
    assert!(stdout(&o).is_empty());
}

#[test]
fn invalid_files_exit_2() {
    let f = Fixture::new();
    for (name, body) in [
        ("json.json", "{\"p\": 3"),
        (
            "prime.json",
            r#"{"p": 6, "e": 1, "ambient": "affine", "n": 1, "polys": ["x1"]}"#,
        ),
        (
            "var.json",
            r#"{"p": 3, "e": 1, "ambient": "affine", "n": 1, "polys": ["x2"]}"#,
        ),
        (
            "homog.json",
            r#"{"p": 3, "e": 1, "ambient": "projective", "n": 1, "polys": ["x0^2 + x1"]}"#,
        ),
        (
            "extra.json",
            r#"{"p": 3, "e": 1, "ambient": "affine", "n": 1, "polys": ["x1"], "z": 0}"#,
        ),
    ] {
        let file = f.variety(name, body);
        let o = run_file(&["count"], &file, &["--k", "1"]);
        assert_eq!(code(&o), 2, "{name}: {}", stderr(&o));
        assert!(stderr(&o).contains(name), "{name}: {}", stderr(&o));
    }
}

#[test]
fn ax_katz_passes() {
    let f = Fixture::new();
    let file = f.variety(
        "quad.json",
        r#"{"p": 3, "e": 1, "ambient": "affine", "n": 4, "polys": ["x1^2 + x2^2 + x3^2 + x4^2"]}"#,
    );
    let o = run_file(
        &["verify", "ax-katz", "--format", "json"],
        &file,
        &["--kmax", "2"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: AxKatzReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.mu, 1);
    assert_eq!(r.rows.len(), 4);
    assert_eq!(r.overall, Verdict::Pass);
}

#[test]
fn projective_hyperplane_round_trips_and_agrees_with_text() {
    let f = Fixture::new();
    let file = f.variety("h.json", HYPERPLANE_P2);
    let json = run_file(&["verify", "projective", "--format", "json"], &file, &[]);
    assert_eq!(code(&json), 0, "{}", stderr(&json));
    let r: ProjectiveReport = serde_json::from_str(&stdout(&json)).unwrap();
    let again: ProjectiveReport =
        serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
    assert_eq!(r.overall, Verdict::Pass);
    let tight = &r.complement.rows[0];
    assert_eq!((tight.min_vq, tight.required), (2.into(), 2));

    let text = run_file(&["verify", "projective"], &file, &[]);
    assert_eq!(code(&text), code(&json));
    assert!(stdout(&text).contains("overall: pass"));
}

#[test]
fn dim_override_is_reported() {
    let f = Fixture::new();
    let file = f.variety(
        "h.json",
        r#"{"p": 3, "e": 1, "ambient": "projective", "n": 2, "polys": ["x0"], "dim": 1}"#,
    );
    let o = run_file(&["verify", "projective"], &file, &[]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dimension: 1 (user)"), "{}", stdout(&o));
}

#[test]
fn polar_checks() {
    let f = Fixture::new();
    let file = f.variety("hyp.json", HYPERBOLA);
    let o = run_file(&["verify", "polar", "--format", "json"], &file, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: PolarReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.orientation, 1);

    let file = f.variety(
        "doubled.json",
        r#"{"p": 3, "e": 1, "ambient": "affine", "n": 2, "polys": ["x1", "2*x1"]}"#,
    );
    let o = run_file(&["verify", "polar"], &file, &[]);
    assert_eq!(code(&o), 2);
    assert!(
        stderr(&o).contains("complete intersection"),
        "{}",
        stderr(&o)
    );
    let o = run_file(&["verify", "polar"], &file, &["--assert-ci"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn polar_rejects_projective_input() {
    let f = Fixture::new();
    let file = f.variety("h.json", HYPERPLANE_P2);
    assert_eq!(code(&run_file(&["verify", "polar"], &file, &[])), 2);
}

#[test]
fn excision_on_hyperplane() {
    let f = Fixture::new();
    let file = f.variety("line.json", AFFINE_LINE);
    let o = run_file(&["verify", "excision"], &file, &["--kmax", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = run_file(&["verify", "excision", "--format", "json"], &file, &[]);
    let r: ExcisionReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.rows.len(), 3);
    assert_eq!(r.rows[0].projective_complement, 9);
}

#[test]
fn probe_is_flagged_and_exits_0() {
    let f = Fixture::new();
    let file = f.variety("hyp.json", HYPERBOLA);
    let o = run_file(&["probe", "affine"], &file, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(
        stdout(&o).starts_with("*** OPEN-QUESTION PROBE ***"),
        "{}",
        stdout(&o)
    );
    let o = run_file(&["probe", "affine", "--format", "json"], &file, &[]);
    let r: ProbeReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.label, "open-question probe");
}

#[test]
fn help_mentions_exit_codes_and_budget() {
    let o = frobdiv(&["--help"]);
    assert_eq!(code(&o), 0);
    let h = stdout(&o);
    assert!(h.contains("Exit codes") && h.contains("budget"), "{h}");
    let o = frobdiv(&["verify", "excision", "--help"]);
    assert!(stdout(&o).contains("[default: 3]"));
}
