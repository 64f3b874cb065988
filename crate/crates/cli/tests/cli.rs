use std::fs;
use std::process::{Command, Output};

fn impspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_impspace"))
        .args(args)
        .arg("--quiet")
        .env_remove("IMP_SPACE_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = impspace(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn error_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stderr).expect("stderr carries a JSON error")
}

#[test]
fn count_edges() {
    assert_eq!(stdout(&["count", "--max-length", "0"]), "length,count,cumulative\n0,0,0\n");
    let nine = stdout(&["count", "--max-length", "9"]);
    assert!(nine.ends_with("9,114513832,123089621\n"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&["count", "--max-length", "3", "--format", "json"])).unwrap();
    assert_eq!(json[3]["cumulative"], "4");
}

#[test]
fn rank_and_unrank() {
    assert_eq!(stdout(&["unrank", "--canonical", "0"]), "skip\n");
    assert_eq!(stdout(&["rank", "--canonical", "skip"]), "0\n");
    let p = stdout(&["unrank", "1000000"]);
    assert_eq!(stdout(&["rank", p.trim()]), "1000000\n");
    let q = stdout(&["unrank", "--base", "123456789123456789"]);
    assert_eq!(stdout(&["rank", "--base", q.trim()]), "123456789123456789\n");
    assert_eq!(stdout(&["unrank", "107"]), "(while ¬false do skip)\n");
}

#[test]
fn run_reports_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["run", "(x[0] := 2; (x[1] := 1; x[2] := 3))"])).unwrap();
    assert_eq!(v["output"], "1000");
    assert_eq!(v["halted"], true);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["run", "(while true do skip)", "--budget", "100"])).unwrap();
    assert_eq!((v["halted"].clone(), v["steps"].clone()), (false.into(), 100.into()));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["run", "skip"])).unwrap();
    assert_eq!(v["output"], "");
}

#[test]
fn errors_are_categorized() {
    let out = impspace(&["run", "(skip; skip"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_of(&out)["error"], "parse");

    let out = impspace(&["unrank", "-4"]);
    assert!(!out.status.success());

    let out = impspace(&["unrank", "abc"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["error"], "usage");

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("s");
    let out = impspace(&["sample", "--max-length", "5", "--lambda", "0.5", "--epsilon", "0.1", "--out", d.to_str().unwrap()]);
    assert_eq!(error_of(&out)["error"], "domain");

    let out = impspace(&["audit", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(error_of(&out)["error"], "io");

    let out = impspace(&["sweep", "--max-length", "40", "--out", d.to_str().unwrap()]);
    assert_eq!(error_of(&out)["error"], "explore");
}

#[test]
fn family_output() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["family", "pows2", "--n", "3", "--run"])).unwrap();
    assert_eq!(v["program_length"], 25);
    assert_eq!(v["output"], "00100");
    let plain: serde_json::Value = serde_json::from_str(&stdout(&["family", "expt", "--n", "10"])).unwrap();
    assert_eq!(plain["program_length"], 27);
    assert!(plain["halted"].is_null());
    let csv = stdout(&["family", "fact", "--n", "2", "--to", "3", "--run", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 3);
    assert!(impspace(&["family", "tetration", "--n", "1"]).status.code() == Some(2));
}

#[test]
fn sweep_artifacts_and_audit() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("sweep");
    let ds = d.to_str().unwrap();
    stdout(&["sweep", "--max-length", "5", "--out", ds, "--workers", "3"]);
    let records = fs::read_to_string(d.join("records.csv")).unwrap();
    let mut lines = records.lines();
    assert_eq!(lines.next(), Some("position,length,halted,steps,output"));
    assert_eq!(lines.next(), Some("0,1,true,0,"));
    assert_eq!(records.lines().count(), 2233);
    let census: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("census.json")).unwrap()).unwrap();
    assert_eq!(census["lengths"]["5"]["halting"], 2059);
    assert_eq!(census["lengths"]["3"]["halting_percent"], 66.7);
    assert!(census["job"].get("workers").is_none());

    let report: serde_json::Value = serde_json::from_str(&stdout(&["audit", ds, "--replay", "--workers", "2"])).unwrap();
    assert_eq!(report["artifacts_verified"], 3);
    assert_eq!(report["replayed"], true);

    let mut text = records.clone();
    text = text.replacen("0,1,true,0,", "0,1,true,1,", 1);
    fs::write(d.join("records.csv"), text).unwrap();
    let out = impspace(&["audit", ds]);
    assert_eq!(out.status.code(), Some(9));
    assert_eq!(error_of(&out)["error"], "integrity");
}

#[test]
fn workers_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("w");
    let out = Command::new(env!("CARGO_BIN_EXE_impspace"))
        .args(["sweep", "--max-length", "4", "--quiet", "--out", d.to_str().unwrap()])
        .env("IMP_SPACE_WORKERS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["job"]["workers"], 3);
}

#[test]
fn sample_reruns_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        stdout(&["sample", "--max-length", "9", "--n", "1000", "--seed", "42", "--out", d.to_str().unwrap()]);
    }
    for f in ["sample.csv", "sample.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap());
    }
    let head = fs::read_to_string(a.join("sample.csv")).unwrap();
    assert!(head.starts_with("position,length,steps\n"));
    let side: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.join("sample.json")).unwrap()).unwrap();
    assert_eq!(side["job"]["seed"], 42);
    assert_eq!(side["job"]["budget"], 10000);
    assert_eq!(side["space_size"], "123089621");
    assert!(side["rejections"].as_u64().is_some());
    let report: serde_json::Value = serde_json::from_str(&stdout(&["audit", a.to_str().unwrap(), "--spot-checks", "50"])).unwrap();
    assert_eq!(report["spot_checks"], 50);
}

#[test]
fn ctm_queries_and_audit() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("ctm");
    let text = stdout(&["ctm", "--max-length", "5", "--out", d.to_str().unwrap(), "--query", "ε", "--query", "1000"]);
    let rows: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[0]["best_length"], 1);
    assert_eq!(rows[1]["best_length"], 5);
    assert_eq!(rows[1]["trivial_length"], 5);
    let csv = fs::read_to_string(d.join("complexity.csv")).unwrap();
    assert!(csv.starts_with("output,best_length,witness,producers\n,1,0,"));
    stdout(&["audit", d.to_str().unwrap(), "--replay"]);
    let out = impspace(&["ctm", "--max-length", "3", "--out", d.to_str().unwrap(), "--query", "111111"]);
    assert_eq!(error_of(&out)["error"], "explore");
}
