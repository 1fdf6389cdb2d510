use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn schurring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schurring"))
        .args(args)
        .env_remove("SCHURRING_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = schurring(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}"));
    (value, out.status.code().unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn classify_reports() {
    let (v, code) = json(&["classify", "72"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!({"schur": false, "split": [8, 9]}));
    let (v, _) = json(&["classify", "60"]);
    assert_eq!(v, serde_json::json!({"schur": true, "families": ["2pqr"]}));
    let (v, _) = json(&["classify", "7"]);
    assert_eq!(
        v,
        serde_json::json!({"schur": true, "families": ["p^k", "pq^k"]})
    );
    let out = schurring(&["classify", "seven"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(schurring(&["classify", "0"]).status.code(), Some(1));
}

#[test]
fn witness_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let w72 = dir.path().join("w72.json");
    let (v, code) = json(&["witness", "8", "9", "-o", w72.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["n"].as_u64(), v["branch"].as_str()),
        (Some(72), Some("eight"))
    );
    assert_eq!((v["a"].as_u64(), v["d"].as_u64()), (Some(4), Some(3)));

    // the file holds canonical classes: sorted by minimum, elements ascending
    let doc: Value = serde_json::from_str(&fs::read_to_string(&w72).unwrap()).unwrap();
    assert_eq!(doc["n"], 72);
    let classes: Vec<Vec<u64>> = serde_json::from_value(doc["classes"].clone()).unwrap();
    assert_eq!(classes.len(), v["rank"].as_u64().unwrap() as usize);
    assert!(classes.windows(2).all(|w| w[0][0] < w[1][0]));
    assert!(classes.iter().all(|c| c.windows(2).all(|p| p[0] < p[1])));
    assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), 72);

    let (a, code) = json(&["analyze", w72.to_str().unwrap()]);
    assert_eq!(code, 0);
    let wreaths = a["wreath_decompositions"].as_array().unwrap();
    assert!(wreaths.contains(&serde_json::json!([24, 3])));

    let (s, code) = json(&["schurity", w72.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(s["schurian"], false);
    let m = &s["mismatch"];
    assert!(m["orbit"].as_array().unwrap().len() < m["class"].as_array().unwrap().len());

    let w120 = dir.path().join("w120.json");
    let (v, code) = json(&["witness", "8", "15", "-o", w120.to_str().unwrap()]);
    assert_eq!((v["n"].as_u64(), code), (Some(120), 0));
}

#[test]
fn witness_preconditions_exit_1() {
    let out = schurring(&["witness", "6", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Ω*(6)"));
}

#[test]
fn analyze_and_decide_small_rings() {
    let dir = tempfile::tempdir().unwrap();
    let group = write(
        dir.path(),
        "z6.json",
        r#"{"n":6,"classes":[[0],[1],[2],[3],[4],[5]]}"#,
    );
    let (a, code) = json(&["analyze", &group]);
    assert_eq!(code, 0);
    assert_eq!(a["dense"], true);
    assert_eq!(a["radical"]["ring_radical"], 1);
    assert_eq!(a["wreath_decompositions"], serde_json::json!([]));
    let (s, _) = json(&["schurity", &group]);
    assert_eq!(s["schurian"], true);
    assert_eq!(s["aut_order"]["value"], "6");

    let all: Vec<usize> = (1..30).collect();
    let rank2 = write(
        dir.path(),
        "k30.json",
        &format!(r#"{{"n":30,"classes":[[0],{all:?}]}}"#),
    );
    let (s, code) = json(&["schurity", &rank2]);
    assert_eq!(code, 0);
    assert_eq!(s["schurian"], true);
    assert_eq!(s["aut_order"]["value"], "265252859812191058636308480000000");
    assert_eq!(s["aut_order"]["factors"][0], serde_json::json!([2, 26]));
}

#[test]
fn invalid_documents() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(
        dir.path(),
        "bad.json",
        r#"{"n":5,"classes":[[0],[1],[2,3,4]]}"#,
    );
    let out = schurring(&["analyze", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negation"));

    let garbage = write(dir.path(), "garbage.json", "{ not json");
    assert_eq!(schurring(&["analyze", &garbage]).status.code(), Some(1));
    assert_eq!(
        schurring(&["analyze", "/nonexistent/file.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn budget_exceeded_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let all: Vec<usize> = (1..12).collect();
    let rank2 = write(
        dir.path(),
        "k12.json",
        &format!(r#"{{"n":12,"classes":[[0],{all:?}]}}"#),
    );
    let (v, code) = json(&["schurity", &rank2, "--budget", "2"]);
    assert_eq!(code, 3);
    assert!(v["error"].as_str().unwrap().contains("budget"));
    let out = Command::new(env!("CARGO_BIN_EXE_schurring"))
        .args(["schurity", &rank2])
        .env("SCHURRING_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerate_counts() {
    let (v, code) = json(&["enumerate", "4"]);
    assert_eq!((v["count"].as_u64(), code), (Some(3), 0));
    let out = schurring(&["enumerate", "4"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains(": 3"));
    let (v, _) = json(&["enumerate", "12", "--up-to-cayley"]);
    assert_eq!(v["count"], 32);
    assert!(v["count_up_to_cayley"].as_u64().unwrap() <= 32);
    assert_eq!(schurring(&["enumerate", "80"]).status.code(), Some(1));
    let (v, code) = json(&["enumerate", "80", "--cap", "90"]);
    assert_eq!(code, 0);
    assert!(v["count"].as_u64().unwrap() > 0);
}

#[test]
fn census_reports() {
    let (v, code) = json(&["enumerate", "24", "--census"]);
    assert_eq!(code, 0);
    assert_eq!(v["census"]["all_schurian"], true);
    assert_eq!(v["census"]["consistent_with_classification"], true);
    let (v, code) = json(&["enumerate", "72", "--census"]);
    assert_eq!(code, 0);
    assert_eq!(v["census"]["all_schurian"], false);
    assert_eq!(v["census"]["consistent_with_classification"], true);
    assert_eq!(v["census"]["first_non_schurian"]["ring"]["n"], 72);
}
