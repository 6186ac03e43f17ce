use std::path::PathBuf;

use assert_cmd::Command;
use serde_json::Value;

fn bin() -> Command {
    Command::cargo_bin("pglcensus").unwrap()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn count_worked_example() {
    let v = json(&["count", "--k", "3", "--p", "11"]);
    assert_eq!(v["total"], 4);
    assert_eq!(v["method"], "closed_form");
    let rows: Vec<(u64, u64)> = v["breakdown"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["orbit"].as_u64().unwrap(), r["classes"].as_u64().unwrap()))
        .collect();
    assert_eq!(rows, vec![(12, 2), (24, 2)]);
}

#[test]
fn count_by_duality_is_indexed_by_k() {
    assert_eq!(json(&["count", "--k", "13", "--p", "19", "--method", "duality"])["total"], 36);
    assert_eq!(json(&["count", "--k", "14", "--p", "19", "--method", "duality"])["total"], 14);
    assert_eq!(json(&["count", "--k", "9", "--p", "7"])["total"], 2);
}

#[test]
fn count_formats() {
    let (code, csv) = run(&["count", "--k", "2", "--p", "19", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(csv, "label,classes,m_H\nC3-(123),1,2\nC2-(12),1,3\ntrivial,2,6\ntotal,4,\n");
    let (_, text) = run(&["count", "--k", "2", "--p", "19", "--format", "text"]);
    assert!(text.starts_with("k=2 p=19 method=closed_form total=4\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "--k", "2", "--p", "4"]).0, 2);
    assert_eq!(run(&["count", "--k", "2"]).0, 64);
    assert_eq!(run(&["tables", "--which", "t99"]).0, 64);
    assert_eq!(run(&["frobnicate"]).0, 64);
    assert_eq!(run(&["stabilizer", "--k", "3", "--p", "5", "--vector", "2,1,0"]).0, 2);
    assert_eq!(run(&["associate", "--p", "11", "--vector", "4,2,1"]).0, 2);
    assert_eq!(run(&["count", "--k", "30", "--p", "31", "--method", "closed"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn stabilizer_of_small_example() {
    let v = json(&["stabilizer", "--k", "2", "--p", "5", "--vector", "2,1,0"]);
    assert_eq!(v["stabilizer"], serde_json::json!(["e", "(1 3)"]));
    assert_eq!(v["orbit_size"], 3);
}

#[test]
fn solve_three_transpositions() {
    let v = json(&["solve", "--k", "5", "--p", "7", "--perm", "(14)(25)(36)"]);
    assert_eq!(v["count"], 8);
    assert_eq!(v["formula"], 8);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 8);
}

#[test]
fn classify_worked_example() {
    let v = json(&["classify", "--k", "3", "--p", "11"]);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 4);
    let sizes: Vec<u64> = classes.iter().map(|c| c["orbit_size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![12, 12, 24, 24]);
}

#[test]
fn associate_and_expand() {
    let v = json(&["associate", "--p", "11", "--vector", "4,2,1,0"]);
    assert_eq!(v["generator"], serde_json::json!([8, 6, 5, 4, 3, 2, 1]));
    assert_eq!(v["associated"], true);
    let v = json(&["block-expand", "--p", "11", "--vector", "4,2,1,0", "--l", "2"]);
    assert_eq!(v["generator"].as_array().unwrap().len(), 18);
    assert_eq!(v["associated"], true);
    let v = json(&["block-expand", "--p", "11", "--vector", "4,2,1,0", "--l", "3"]);
    assert_eq!(v["generator"].as_array().unwrap().len(), 29);
}

#[test]
fn gale_commands() {
    let (line, plane) = (data("line.json"), data("plane.json"));
    let (line, plane) = (line.to_str().unwrap(), plane.to_str().unwrap());
    let signs = data("signs.json");
    let ones = data("ones.json");
    let (code, _) = run(&["gale", "check", "--a", line, "--b", plane, "--lambda", signs.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out) = run(&["gale", "check", "--a", line, "--b", plane, "--lambda", ones.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("\"associated\": false"));
    let v = json(&["gale", "check", "--a", line, "--b", plane]);
    assert_eq!(v["lambda"], serde_json::json!([1, 1, -1, -1, -1]));
    let v = json(&["gale", "lambda", "--a", line, "--b", plane]);
    assert_eq!(v["cyclotomic_order"], 8);
    assert_eq!(run(&["gale", "lambda", "--a", line, "--b", line]).0, 2);
    assert_eq!(run(&["gale", "check", "--a", "/nonexistent.json", "--b", plane]).0, 2);
}

#[test]
fn gale_transform_output_is_a_matrix_file() {
    let hex = data("hexagon.json");
    let (code, out) = run(&["gale", "transform", "--a", hex.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["rows"].as_u64(), v["cols"].as_u64()), (Some(3), Some(6)));
    let dir = std::env::temp_dir().join(format!("pglcensus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dual = dir.join("dual.json");
    std::fs::write(&dual, out).unwrap();
    let v = json(&["gale", "check", "--a", hex.to_str().unwrap(), "--b", dual.to_str().unwrap()]);
    assert_eq!(v["lambda"], serde_json::json!([1, 1, 1, -1, -1, -1]));
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(run(&["gale", "transform", "--a", data("collinear.json").to_str().unwrap()]).0, 2);
}

#[test]
fn tables_match_golden_files() {
    for name in ["k2", "k3", "k4", "k5", "t15", "t16", "s4"] {
        let (code, out) = run(&["tables", "--which", name]);
        assert_eq!(code, 0);
        let golden = std::fs::read_to_string(
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}.csv")),
        )
        .unwrap();
        assert_eq!(out, golden, "{name}");
    }
}

#[test]
fn reference_values_in_tables() {
    let (_, t16) = run(&["tables", "--which", "t16"]);
    let counts: Vec<&str> = t16.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(counts, ["1", "1", "1", "4", "14", "36", "86"]);
    let (_, k2) = run(&["tables", "--which", "k2"]);
    let primes: Vec<&str> = k2.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(primes, ["5", "7", "7", "17", "17", "19", "19", "19"]);
    let (_, s4) = run(&["tables", "--which", "s4"]);
    assert!(s4.contains("Int_(13)(24),3,true,11,2,2\n"));
    assert!(s4.contains("Int_(14)(25)(36),5,true,17,"));
    assert!(s4.lines().any(|l| l.starts_with("Int_(14)(25)(36),5,true,17,") && l.ends_with(",7")));
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", "--k", "4", "--p", "11"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn verify_runs() {
    let (code, out) = run(&["verify", "--max-p", "13"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("0 failed\n"));
    let (code, out) = run(&["verify", "--max-p", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 failed"));
    assert_eq!(run(&["verify", "--max-p", "40"]).0, 2);
}
