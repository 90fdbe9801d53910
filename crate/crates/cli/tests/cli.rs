use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

use tropint::complexes::{weighted_supports_equal, CellComplex, WeightedComplex};
use tropint::fixtures::{all_fixtures, line_poly, parabola_poly, FIXTURE_IDS};
use tropint::valued_poly::{tropicalize, ValuedLaurentPoly};
use tropint_cli::io::{to_json, ComplexFile, PolyFile};

fn tropint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropint")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn write_poly(dir: &TempDir, name: &str, f: &ValuedLaurentPoly) -> PathBuf {
    write(dir, name, &to_json(&PolyFile::from_poly(f).unwrap()))
}

fn write_complex(dir: &TempDir, name: &str, c: &WeightedComplex) -> PathBuf {
    write(dir, name, &to_json(&ComplexFile::from_complex(c).unwrap()))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn every_example_matches() {
    for id in FIXTURE_IDS {
        let o = tropint(&["examples", "--id", id]);
        assert_eq!(o.status.code(), Some(0), "{id}: {}", stdout(&o));
        assert!(stdout(&o).contains("result: MATCH"));
    }
    let o = tropint(&["examples", "--id", "6.1a"]);
    assert!(stdout(&o).contains("computed {(-1,-1):1, (0,1):1}"));
}

#[test]
fn unknown_example_is_a_precondition_error() {
    let o = tropint(&["examples", "--id", "9.9"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("UnknownFixture"));
}

#[test]
fn mixed_volume_of_two_triangles() {
    let dir = TempDir::new().unwrap();
    let tri = r#"{"vertices": [["0","0"], ["1","0"], ["0","1"]]}"#;
    let p = write(&dir, "p.json", &format!(r#"{{"n": 2, "polytopes": [{tri}, {tri}]}}"#));
    let o = tropint(&["mixedvol", "--polytopes", s(&p)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn tropical_line_is_balanced() {
    let dir = TempDir::new().unwrap();
    let f = write_poly(&dir, "f.json", &line_poly());
    let c = dir.path().join("c.json");
    let o = tropint(&["tropicalize", "--poly", s(&f), "--out", s(&c)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = tropint(&["balance", "--complex", s(&c)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");
}

#[test]
fn unbalanced_complex_fails_balance() {
    let dir = TempDir::new().unwrap();
    let ray = r#"{"n": 2, "dim": 1, "cells": [{"ineqs": [{"normal": [-1, 0], "offset": "0"}], "eqs": [{"normal": [0, 1], "offset": "0"}]}], "multiplicities": [{"cell": 0, "m": 1}]}"#;
    let c = write(&dir, "ray.json", ray);
    let o = tropint(&["balance", "--complex", s(&c)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"cell\""));
}

#[test]
fn malformed_json_exits_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"n\": 2, \"terms\": [");
    let o = tropint(&["tropicalize", "--poly", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let short = write(&dir, "short.json", r#"{"n": 2, "terms": [{"exp": [1], "val": "0"}]}"#);
    assert_eq!(tropint(&["tropicalize", "--poly", s(&short)]).status.code(), Some(2));
    let o = tropint(&["tropicalize", "--poly", s(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn precondition_failure_exits_three() {
    let dir = TempDir::new().unwrap();
    let mono = write(&dir, "m.json", r#"{"n": 2, "terms": [{"exp": [1, 2], "val": "1/2"}]}"#);
    let o = tropint(&["tropicalize", "--poly", s(&mono)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("MonomialInput"));
}

#[test]
fn stable_and_liftcheck_through_files() {
    let dir = TempDir::new().unwrap();
    let a = write_complex(&dir, "a.json", &tropicalize(&line_poly()).unwrap());
    let b = write_complex(&dir, "b.json", &tropicalize(&parabola_poly(-1)).unwrap());
    let out = dir.path().join("s.json");
    let o = tropint(&["stable", "--a", s(&a), "--b", s(&b), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let st = tropint_cli::io::load_complex(&out).unwrap();
    assert_eq!(st.total_multiplicity(), 2);

    let o = tropint(&["liftcheck", "--a", s(&a), "--b", s(&b), "--point", "1/2,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdict"], "LIFTS");
    assert_eq!(report["total_multiplicity"], 2);
    assert_eq!(report["point"], serde_json::json!(["1/2", "0"]));

    let o = tropint(&["multi-stable", "--complexes", s(&a), s(&b)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn negative_points_and_star() {
    let dir = TempDir::new().unwrap();
    let a = write_complex(&dir, "a.json", &tropicalize(&line_poly()).unwrap());
    let o = tropint(&["star", "--complex", s(&a), "--point", "-2,-2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let star: ComplexFile = serde_json::from_str(&stdout(&o)).unwrap();
    let star = star.to_complex().unwrap();
    assert_eq!(star.maximal_cells().len(), 1);
    let o = tropint(&["star", "--complex", s(&a), "--point", "5,7"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn complete_intersection_count_from_files() {
    let dir = TempDir::new().unwrap();
    let f = write_poly(&dir, "f.json", &line_poly());
    let g = write_poly(&dir, "g.json", &parabola_poly(1));
    let o = tropint(&["cicount", "--polys", s(&f), s(&g), "--point", "-1,-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn render_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = write_complex(&dir, "a.json", &tropicalize(&line_poly()).unwrap());
    let args = ["render", "--complex", s(&a), "--window", "-3,3,-3,3"];
    let first = stdout(&tropint(&args));
    assert_eq!(first, stdout(&tropint(&args)));
    assert_eq!(first.matches("<line ").count(), 3);
    assert_eq!(first.matches("<circle ").count(), 1);

    let y = write_complex(&dir, "y.json", &WeightedComplex::whole_space(3));
    assert_eq!(tropint(&["render", "--complex", s(&y)]).status.code(), Some(3));
}

#[test]
fn complexes_round_trip() {
    for f in all_fixtures().unwrap() {
        let list = [Some(&f.a), Some(&f.b), f.ambient.as_ref()];
        for c in list.into_iter().flatten() {
            let text = to_json(&ComplexFile::from_complex(c).unwrap());
            let back: ComplexFile = serde_json::from_str(&text).unwrap();
            let back = back.to_complex().unwrap();
            assert!(weighted_supports_equal(c, &back), "fixture {}", f.id);
            assert_eq!(back.ambient_dim(), c.ambient_dim());
        }
    }
}
