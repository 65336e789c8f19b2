use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rickart::{FieldDescriptor, Matrix};
use serde_json::Value;
use tempfile::TempDir;

fn rickart(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rickart")).args(args).current_dir(dir).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn matrix(v: &Value) -> Matrix {
    Matrix::from_json(&v.to_string()).unwrap()
}

fn qi(rows: &[&[&str]]) -> Matrix {
    Matrix::parse(FieldDescriptor::GaussianRationals, rows).unwrap()
}

fn f3(rows: &[&[&str]]) -> Matrix {
    Matrix::parse(FieldDescriptor::prime(3).unwrap(), rows).unwrap()
}

fn workspace(files: &[(&str, Matrix)]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, m) in files {
        fs::write(dir.path().join(name), m.to_json()).unwrap();
    }
    dir
}

#[test]
fn pinv_output_reparses_and_inverts() {
    let a = qi(&[&["1", "0+1i"], &["0", "0"], &["2", "0"]]);
    let dir = workspace(&[("a.json", a.clone())]);
    let out = rickart(dir.path(), &["pinv", "a.json"]);
    assert!(out.status.success());
    let x = matrix(&stdout_json(&out));
    assert_eq!(x.shape(), (2, 3));
    assert_eq!(&(&a * &x) * &a, a);
    assert_eq!(&(&x * &a) * &x, x);
}

#[test]
fn primes_annihilate() {
    let a = f3(&[&["1", "2"], &["2", "1"]]);
    let dir = workspace(&[("a.json", a.clone())]);
    let v = stdout_json(&rickart(dir.path(), &["primes", "a.json"]));
    assert!((&matrix(&v["lp"]) * &a).is_zero());
    assert!((&a * &matrix(&v["rp"])).is_zero());
    assert_eq!(&matrix(&v["ld"]) * &a, a);
    assert_eq!(&a * &matrix(&v["rd"]), a);
}

#[test]
fn order_reports_every_formulation() {
    let dir = workspace(&[
        ("e.json", qi(&[&["1", "0"], &["0", "0"]])),
        ("one.json", qi(&[&["1", "0"], &["0", "1"]])),
    ]);
    let out = rickart(dir.path(), &["order", "--side", "right", "e.json", "one.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["agreed"], Value::Bool(true));
    let verdicts = v["verdicts"].as_object().unwrap();
    assert_eq!(verdicts.len(), 5);
    assert!(verdicts.values().all(|b| *b == Value::Bool(true)));

    let out = rickart(dir.path(), &["order", "--side", "left", "--formulation", "witness", "one.json", "e.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["holds"], Value::Bool(false));

    let out = rickart(dir.path(), &["order", "--side", "left", "--formulation", "nonsense", "e.json", "one.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mismatched_rings_are_errors() {
    let dir = workspace(&[("a.json", qi(&[&["1", "0"], &["0", "0"]])), ("b.json", f3(&[&["1", "0"], &["0", "0"]]))]);
    let out = rickart(dir.path(), &["order", "--side", "right", "a.json", "b.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
}

#[test]
fn meet_and_join_below_a_bound() {
    let dir = workspace(&[
        ("x.json", f3(&[&["1", "0"], &["0", "1"]])),
        ("a.json", f3(&[&["1", "0"], &["0", "0"]])),
        ("b.json", f3(&[&["0", "0"], &["0", "1"]])),
    ]);
    let meet = rickart(dir.path(), &["meet", "--bound", "x.json", "a.json", "b.json"]);
    assert!(meet.status.success());
    assert!(matrix(&stdout_json(&meet)).is_zero());
    let join = rickart(dir.path(), &["join", "--bound", "x.json", "a.json", "b.json"]);
    assert_eq!(matrix(&stdout_json(&join)), f3(&[&["1", "0"], &["0", "1"]]));
}

#[test]
fn segment_lists_the_elements_below_the_top() {
    let dir = workspace(&[("x.json", f3(&[&["1", "0"], &["0", "1"]])), ("q.json", qi(&[&["1"]]))]);
    let out = rickart(dir.path(), &["segment", "--top", "x.json", "--ring", "M2(F3)"]);
    assert!(out.status.success());
    let elements: Vec<Matrix> = stdout_json(&out).as_array().unwrap().iter().map(matrix).collect();
    assert_eq!(elements.len(), 6);
    assert!(elements.contains(&f3(&[&["0", "0"], &["0", "0"]])));

    let wrong_ring = rickart(dir.path(), &["segment", "--top", "x.json", "--ring", "M2(F7)"]);
    assert_eq!(wrong_ring.status.code(), Some(2));
    let not_enumerable = rickart(dir.path(), &["segment", "--top", "q.json", "--ring", "Qi:n=1"]);
    assert_eq!(not_enumerable.status.code(), Some(2));
}

#[test]
fn projection_hasse_diagram_has_one_bottom_and_one_top() {
    let dir = tempfile::tempdir().unwrap();
    let out = rickart(dir.path(), &["hasse", "--relation", "projections", "--ring", "M2(F3)"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph hasse {"));
    let edges: Vec<(&str, &str)> = dot
        .lines()
        .filter_map(|l| l.trim().trim_end_matches(';').split_once(" -> "))
        .collect();
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    assert_eq!(nodes, 6);
    // four atoms, each covering 0 and covered by 1
    assert_eq!(edges.len(), 8);
    let sources: std::collections::BTreeSet<_> = edges.iter().map(|e| e.0).collect();
    let targets: std::collections::BTreeSet<_> = edges.iter().map(|e| e.1).collect();
    assert_eq!(sources.difference(&targets).count(), 1);
    assert_eq!(targets.difference(&sources).count(), 1);
}

#[test]
fn improper_rings_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["hasse", "--relation", "right-cstar", "--ring", "M2(F2)"][..],
        &["verify", "--suite", "penrose", "--ring", "M2(F5)"][..],
    ] {
        let out = rickart(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("not admitted"), "{args:?}");
    }
}

#[test]
fn verify_reports_per_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = rickart(dir.path(), &["verify", "--ring", "M1(F3)"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = stdout_json(&out);
    let reports = reports.as_array().unwrap();
    assert!(reports.len() > 5);
    assert!(reports.iter().all(|r| r["failures"].as_array().unwrap().is_empty()));

    let sampled = |seed: &str| {
        let out = rickart(
            dir.path(),
            &["verify", "--suite", "penrose", "--ring", "Qi:n=2", "--samples", "20", "--seed", seed],
        );
        assert_eq!(out.status.code(), Some(0));
        let v = stdout_json(&out);
        assert_eq!(v[0]["suite"], "penrose");
        v[0]["cases"].as_u64().unwrap()
    };
    assert_eq!(sampled("3"), sampled("3"));

    let unknown = rickart(dir.path(), &["verify", "--suite", "nope", "--ring", "M1(F3)"]);
    assert_eq!(unknown.status.code(), Some(2));
}
