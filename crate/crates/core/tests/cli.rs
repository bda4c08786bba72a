use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use cgdg::report::strip_timing;

fn cgdg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgdg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn json(file: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap()
}

#[test]
fn generate_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        path(dir.path(), "a.json"),
        path(dir.path(), "b.json"),
        path(dir.path(), "c.json"),
    );
    for (out, seed) in [(&a, "41"), (&b, "41"), (&c, "42")] {
        assert!(cgdg(&[
            "generate",
            "--seed",
            seed,
            "--n",
            "25",
            "--constraints",
            "4",
            "--out",
            out
        ])
        .status
        .success());
    }
    let read = |f: &str| std::fs::read(f).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));
}

#[test]
fn verify_writes_report_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, rep, svg) = (
        path(dir.path(), "i.json"),
        path(dir.path(), "r.json"),
        path(dir.path(), "g.svg"),
    );
    assert!(cgdg(&[
        "generate",
        "--seed",
        "3",
        "--n",
        "15",
        "--constraints",
        "3",
        "--out",
        &inst
    ])
    .status
    .success());
    let out = cgdg(&[
        "verify",
        "--instance",
        &inst,
        "--shape",
        "ngon:6",
        "--out-report",
        &rep,
        "--out-svg",
        &svg,
        "--grid-oracle",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = json(&rep);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["passed"], true);
    let checks: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["property"].as_str().unwrap())
        .collect();
    assert!(checks.contains(&"grid_oracle") && checks.contains(&"theorem1"));
    let edges = r["edges"].as_array().unwrap().len();
    let drawing = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(drawing.matches("<polyline").count(), edges);
    assert_eq!(drawing.matches("class=\"highlight\"").count(), 1);
}

#[test]
fn reports_repeat_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.json"), path(dir.path(), "b.json"));
    for out in [&a, &b] {
        let o = cgdg(&[
            "verify",
            "--shape",
            "rect:2:1",
            "--seed",
            "9",
            "--n",
            "30",
            "--constraints",
            "6",
            "--out-report",
            out,
        ]);
        assert!(o.status.success());
    }
    assert_eq!(strip_timing(json(&a)), strip_timing(json(&b)));
}

#[test]
fn build_lists_witnesses() {
    let out = cgdg(&[
        "build",
        "--shape",
        "equilateral",
        "--seed",
        "1",
        "--n",
        "8",
        "--constraints",
        "1",
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let edges = doc["edges"].as_array().unwrap();
    assert!(!edges.is_empty());
    assert!(edges.iter().all(|e| e["scale"].as_f64().unwrap() > 0.0));
}

#[test]
fn sweep_prints_table() {
    let out = cgdg(&[
        "sweep",
        "--sweep",
        "square,equilateral;2",
        "--n",
        "10",
        "--constraints",
        "2",
    ]);
    assert!(out.status.success());
    let table = String::from_utf8_lossy(&out.stderr);
    assert!(table.contains("square") && table.contains("equilateral"));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, r#"{"points": [[0,0],[0,0]]}"#).unwrap();
    for args in [
        vec!["verify", "--shape", "circle"],
        vec!["verify", "--instance", "/nonexistent/instance.json"],
        vec!["verify", "--instance", bad.as_str()],
        vec!["verify", "--tolerance", "speed=3"],
        vec!["generate", "--n", "1"],
        vec!["sweep", "--sweep", "square;5..5"],
        vec!["frobnicate"],
    ] {
        let out = cgdg(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
