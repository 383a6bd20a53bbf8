mod common;

use std::process::{Command, Output};

use partlie::report::ChainReportJson;

fn partlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partlie"))
        .args(args)
        .env_remove("PARTLIE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sequence_csv_reproduces_tables() {
    let fixture = common::sequence_fixture();
    for m in 2..=5 {
        let o = partlie(&[
            "sequence",
            "--m",
            &m.to_string(),
            "--max-i",
            "16",
            "--format",
            "csv",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
        let rows: Vec<(usize, usize, usize)> = rdr.deserialize().map(|r| r.unwrap()).collect();
        let p: Vec<usize> = rows.iter().map(|r| r.1).collect();
        let q: Vec<usize> = rows.iter().map(|r| r.2).collect();
        assert_eq!(p, fixture[&(m, "p".to_string())]);
        assert_eq!(q, fixture[&(m, "q".to_string())]);
    }
    let o = partlie(&["sequence", "--m", "2", "--max-i", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"], serde_json::json!([{"i": 1, "p": 0, "q": 0}]));
}

fn chain_json(args: &[&str]) -> ChainReportJson {
    let o = partlie(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

fn ranks(r: &ChainReportJson) -> Vec<usize> {
    r.steps
        .iter()
        .filter(|s| s.i >= 1)
        .map(|s| s.rank)
        .collect()
}

#[test]
fn chain_ranks() {
    let r = chain_json(&[
        "chain", "--m", "2", "--n", "6", "--depth", "4", "--format", "json",
    ]);
    assert_eq!(ranks(&r), [1, 2, 4, 7]);
    assert!(r.growth_check.passed);
    let r = chain_json(&[
        "chain", "--m", "3", "--n", "5", "--depth", "4", "--format", "json",
    ]);
    assert_eq!(ranks(&r), [1, 2, 5, 9]);
    let r = chain_json(&[
        "chain", "--m", "2", "--n", "1", "--depth", "1", "--format", "json",
    ]);
    assert_eq!(ranks(&r), [0]);
}

#[test]
fn chain_csv_layout() {
    let o = partlie(&[
        "chain", "--m", "2", "--n", "6", "--depth", "4", "--format", "csv",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,k,count,predicted,match"));
    let mut per_step = std::collections::BTreeMap::<i64, usize>::new();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 5);
        let i: i64 = cells[0].parse().unwrap();
        *per_step.entry(i).or_default() += cells[2].parse::<usize>().unwrap();
        if i >= 1 {
            assert_eq!(cells[3], cells[2]);
            assert_eq!(cells[4], "true");
        }
    }
    let ranks: Vec<usize> = per_step.range(1..).map(|(_, &c)| c).collect();
    assert_eq!(ranks, [1, 2, 4, 7]);
}

#[test]
fn json_round_trips_and_output_is_deterministic() {
    let args = ["chain", "--m", "3", "--n", "5", "--format", "json"];
    let first = partlie(&args);
    let second = partlie(&args);
    assert_eq!(first.stdout, second.stdout);
    let parsed: ChainReportJson = serde_json::from_slice(&first.stdout).unwrap();
    let again = serde_json::to_vec_pretty(&parsed).unwrap();
    assert_eq!(
        String::from_utf8(again).unwrap().trim_end(),
        stdout(&first).trim_end()
    );
    let raw: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let elem = &raw["steps"][1]["new_elements"][0];
    assert!(elem["parts"].is_array() && elem["k"].is_u64());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.json");
    let o = partlie(&[
        "chain",
        "--n",
        "4",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: ChainReportJson = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!((r.m, r.n), (2, 4));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        partlie(&["verify", "growth", "--m", "4", "--n", "6"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        partlie(&["verify", "bijection", "--n", "7"]).status.code(),
        Some(0)
    );
    assert_eq!(
        partlie(&["verify", "unrefinable", "--m", "3", "--n", "5"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        partlie(&["verify", "nth", "--n", "9"]).status.code(),
        Some(0)
    );
    assert_eq!(
        partlie(&["verify", "nth", "--m", "3", "--n", "6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        partlie(&["verify", "nope", "--n", "6"]).status.code(),
        Some(2)
    );
    assert_eq!(
        partlie(&["chain", "--m", "2", "--n", "3", "--depth", "100"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn verify_nth_at_eight_reports_the_disagreement() {
    let o = partlie(&["verify", "nth", "--n", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let only: Vec<String> = v["nth"]["predicted_only"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.to_string())
        .collect();
    assert_eq!(only.len(), 5);
    let text = stdout(&partlie(&["verify", "nth", "--n", "8"]));
    assert!(text.starts_with("FAIL nth step n=8"));
    assert!(text.contains("x2*x7 d8: predicted, not in chain"));
}

#[test]
fn thread_env_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_partlie"))
        .args(["verify", "growth", "--n", "7"])
        .env("PARTLIE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_partlie"))
        .args(["verify", "growth", "--n", "7"])
        .env("PARTLIE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
