use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_powergraph");
const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("POWERGRAPH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_json_and_dot() {
    let o = run(&["build", "cyclic:15"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 15);
    assert_eq!(v["edges"].as_array().unwrap().len(), 97);
    let o = run(&["build", "cyclic:5", "--format", "dot", "--paper-labels"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("graph"));
}

#[test]
fn analyze_and_classify() {
    let o = run(&["analyze", "cyclic:15"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["overfull"]["overfull"], false);
    assert_eq!(v["overfull"]["deficiency"], 8);
    assert_eq!(v["full_degree_vertices"], 9);
    let o = run(&["classify", "cyclic:27"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["prediction"]["class_label"], "Class2");
}

#[test]
fn color_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (format, file) in [("csv", "c.csv"), ("json", "c.json")] {
        let path = dir.path().join(file);
        let p = path.to_str().unwrap();
        let o = run(&["color", "cyclic:21", "--format", format, "--out", p]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let o = run(&["verify", "--group", "cyclic:21", "--coloring", p]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["valid"], true);
        assert_eq!(v["colors_used"], 20);
    }
}

#[test]
fn verify_against_graph_file_and_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let o = run(&["build", "cyclic:15", "--out", graph.to_str().unwrap()]);
    assert!(o.status.success());
    let table1 = Path::new(FIXTURES).join("table1_c15.csv");
    let o = run(&["verify", "--graph", graph.to_str().unwrap(), "--coloring", table1.to_str().unwrap()]);
    assert!(o.status.success());
    // the base near-coloring colors edges that are not in the power graph
    let table2 = Path::new(FIXTURES).join("table2_k15_base.csv");
    let o = run(&["verify", "--group", "cyclic:15", "--coloring", table2.to_str().unwrap()]);
    assert!(!o.status.success());
}

#[test]
fn conflicting_coloring_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "1\n\"(1, 2)\"\n\"(2, 3)\"\n").unwrap();
    let o = run(&["verify", "--group", "cyclic:3", "--coloring", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["conflicts"].as_array().unwrap().len(), 1);
}

#[test]
fn strategies_and_errors() {
    let o = run(&["color", "cyclic:6", "--strategy", "rhee"]);
    assert!(!o.status.success());
    let o = run(&["color", "cyclic:9", "--strategy", "sp"]);
    assert!(o.status.success());
    let o = run(&["build", "dihedral:2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["color", "cyclic:15", "--strategy", "bogus"]);
    assert!(!o.status.success());
}

#[test]
fn survey_is_reproducible() {
    let table = format!("table:{FIXTURES}/c7_c3_order21.table");
    let args = ["survey", "--max-order", "21", "--witness", "--oracle-max-order", "9", "--extra", &table];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(run(&seq).stdout, a.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let overfull: Vec<&str> = v["summary"]["overfull_groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert_eq!(overfull, ["cyclic:3", "cyclic:5", "cyclic:7", "cyclic:9", "cyclic:11", "cyclic:13", "cyclic:17", "cyclic:19"]);
    assert!(v["summary"]["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn survey_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let o = run(&["survey", "--max-order", "8", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["summary"]["groups"], 14);
}
