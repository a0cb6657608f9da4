use std::path::Path;
use std::process::{Command, Output};

use frame_canext::corpus::{b4, c3, m3, two};
use frame_canext_cli::doc::{parse, CanExtDoc, Document};
use frame_canext_cli::lattice_document;

fn canext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn put(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn canext_on_c3() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "c3.json", &lattice_document("c3", &c3()));
    let o = canext(&["canext", &f]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("pass          canext/dense"), "{s}");
    assert!(s.contains("pass          canext/compact\n"), "{s}");
    assert!(s.contains("extension size [3]"), "{s}");
}

#[test]
fn emitted_bundle_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "c3.json", &lattice_document("c3", &c3()));
    let out = dir.path().join("c3-ext.json");
    let o = canext(&["canext", &f, "--emit", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let Document::Canext(d) = parse(&text).unwrap() else {
        panic!("not a canext document")
    };
    let b = d.to_bundle().unwrap();
    assert_eq!(CanExtDoc::from_bundle(Some("c3"), &b), d);
    let v = canext(&["verify", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn spectrum_of_b4() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "b4.json", &lattice_document("b4", &b4()));
    let o = canext(&["spectrum", &f]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("pt(L) [2 points]"), "{s}");
    assert!(s.contains("pass          Up(pt L) ≅ L\n"), "{s}");
}

#[test]
fn dot_of_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "two.json", &lattice_document("2", &two()));
    let s = stdout(&canext(&["dot", &f]));
    assert!(s.starts_with("digraph"));
    assert_eq!(s.matches("[label=").count(), 2);
    assert_eq!(s.matches(" -> ").count(), 1);
}

#[test]
fn out_of_range_pair_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "bad.json",
        r#"{"kind": "lattice", "version": 1, "elements": ["0", "1"], "cover": [[0, 1], [1, 9]]}"#,
    );
    let o = canext(&["check", &f]);
    assert_eq!(o.status.code(), Some(2));
    let e = String::from_utf8_lossy(&o.stderr);
    assert!(e.contains("(1, 9)"), "{e}");
}

#[test]
fn syntax_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "bad.json",
        "{\"kind\": \"lattice\",\n \"elements\": [}",
    );
    let o = canext(&["check", &f]);
    assert_eq!(o.status.code(), Some(2));
    let e = String::from_utf8_lossy(&o.stderr);
    assert!(e.contains("line 2, column"), "{e}");
}

#[test]
fn exit_code_follows_overall_status() {
    let dir = tempfile::tempdir().unwrap();
    let good = put(dir.path(), "b4.json", &lattice_document("b4", &b4()));
    let bad = put(dir.path(), "m3.json", &lattice_document("m3", &m3()));
    assert_eq!(canext(&["verify", &good]).status.code(), Some(0));
    assert_eq!(canext(&["verify", &bad]).status.code(), Some(1));
    // Skipped entries pass unless --strict.
    assert_eq!(
        canext(&["verify", &good, "--bound", "2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        canext(&["verify", &good, "--bound", "2", "--strict"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn structured_reports_are_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "c3.json", &lattice_document("c3", &c3()));
    let o = canext(&["subloc", &f, "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "report-set");
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["reports"][0]["subject"], "c3");
}

#[test]
fn corpus_command_and_map_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let o = canext(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let n = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(n, frame_canext_cli::corpus_documents().len());
    let map = dir.path().join("map-c3-collapse.json");
    let v = canext(&["verify", map.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert!(stdout(&v).contains("lift/h^σ = h^π"));
}

#[test]
fn unknown_map_lattice_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "m.json",
        r#"{"kind": "map", "version": 1, "source": "nowhere", "target": "c3", "table": [0]}"#,
    );
    let o = canext(&["verify", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nowhere"));
}
