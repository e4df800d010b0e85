use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const GOLDEN: &str = r#"{"points": [
  {"a": ["0", "0"], "b": ["0", "0"]},
  {"a": ["4", "0"], "b": ["4", "0"]},
  {"a": ["0", "4"], "b": ["2", "2"]}
]}"#;

fn plext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plext")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("error JSON on stderr")
}

#[test]
fn golden_extend_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "golden.json", GOLDEN);
    let map = dir.path().join("golden.map.json");
    let out = plext(&["extend", "--input", s(&input), "--output", s(&map)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&map).unwrap()).unwrap();
    assert_eq!(doc["audit"]["all_passed"], true);
    assert_eq!(doc["map"]["motions"].as_array().unwrap().len(), 2);
    assert_eq!(doc["instance_hash"].as_str().unwrap().len(), 64);

    let out = plext(&["verify", "--map", s(&map), "--instance", s(&input), "--samples", "200", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["seed"], 9);
}

#[test]
fn map_goes_to_stdout_without_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "golden.json", GOLDEN);
    let out = plext(&["extend", "--input", s(&input), "--verify", "none"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc.get("audit").is_none());
    assert!(doc["map"]["triangles"].is_array());
}

#[test]
fn approximate_verification() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "golden.json", GOLDEN);
    let map = dir.path().join("m.json");
    let out = plext(&["extend", "--input", s(&input), "--output", s(&map), "--verify", "approx", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let out = plext(&["verify", "--map", s(&map), "--instance", s(&input), "--mode", "approx"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn negative_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let stretched = write(
        dir.path(),
        "s.json",
        r#"{"points": [{"a": ["0","0"], "b": ["0","0"]}, {"a": ["1","0"], "b": ["3","0"]}]}"#,
    );
    let out = plext(&["extend", "--input", s(&stretched)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!((err["i"].as_u64(), err["j"].as_u64()), (Some(0), Some(1)));

    let collinear = write(
        dir.path(),
        "c.json",
        r#"{"points": [{"a": ["0","0"], "b": ["0","0"]}, {"a": ["1","1"], "b": ["1","1"]}, {"a": ["2","2"], "b": ["2","2"]}]}"#,
    );
    assert_eq!(plext(&["extend", "--input", s(&collinear)]).status.code(), Some(3));

    let single = write(dir.path(), "one.json", r#"{"points": [{"a": ["2","3"], "b": ["5","3"]}]}"#);
    let out = plext(&["extend", "--input", s(&single)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["dimension"], 0);
    assert!(stderr_json(&out)["motion"].is_object());

    let truncated = write(dir.path(), "t.json", &GOLDEN[..40]);
    assert_eq!(plext(&["extend", "--input", s(&truncated)]).status.code(), Some(1));
    assert_eq!(plext(&["extend", "--input", "/nonexistent/x.json"]).status.code(), Some(1));
    assert_eq!(plext(&["extend"]).status.code(), Some(1));
    assert_eq!(plext(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn verify_rejects_bad_maps() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "golden.json", GOLDEN);
    let map = dir.path().join("m.json");
    assert_eq!(plext(&["extend", "--input", s(&input), "--output", s(&map)]).status.code(), Some(0));
    let text = std::fs::read_to_string(&map).unwrap();

    let truncated = write(dir.path(), "trunc.json", &text[..text.len() / 2]);
    assert_eq!(plext(&["verify", "--map", s(&truncated), "--instance", s(&input)]).status.code(), Some(1));

    let other = write(
        dir.path(),
        "other.json",
        &GOLDEN.replace(r#"["2", "2"]"#, r#"["2", "3"]"#),
    );
    let out = plext(&["verify", "--map", s(&map), "--instance", s(&other)]);
    assert_eq!(out.status.code(), Some(4));
    let failed = stderr_json(&out)["failed_checks"].clone();
    assert!(failed.as_array().unwrap().iter().any(|c| c == "interpolation"));
}

#[test]
fn unwritable_svg_path_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "golden.json", GOLDEN);
    let out = plext(&["extend", "--input", s(&input), "--verify", "none", "--svg", "/nonexistent/dir/f.svg"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "io");
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "i.json",
        r#"{"points": [
          {"a": ["0","0"], "b": ["0","0"]}, {"a": ["6","0"], "b": ["2","0"]},
          {"a": ["3","3"], "b": ["1","1"]}, {"a": ["2","1/2"], "b": ["1/2","1/4"]}
        ]}"#,
    );
    let run = |tag: &str| {
        let (m, g) = (dir.path().join(format!("{tag}.json")), dir.path().join(format!("{tag}.svg")));
        let out = plext(&["extend", "--input", s(&input), "--output", s(&m), "--svg", s(&g), "--samples", "100"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        (std::fs::read(m).unwrap(), std::fs::read(g).unwrap())
    };
    assert_eq!(run("first"), run("second"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(plext(&["--help"]).status.code(), Some(0));
    assert_eq!(plext(&["--version"]).status.code(), Some(0));
}
