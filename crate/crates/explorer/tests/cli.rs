use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghs-explorer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn snf_of_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", "[[3,0,0],[0,6,1],[0,0,9]]");
    let out = run(&["snf", &a]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 3 54");

    let json = run(&["snf", &a, "--format", "json", "--transforms"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["diagonal"], serde_json::json!(["1", "3", "54"]));
    assert!(v.get("s").is_some() || v.get("left").is_some(), "{v}");
}

#[test]
fn ghs_reports_snf_and_bound() {
    let k3 = run(&["ghs", "--family", "complete", "--n", "3", "--d", "6,9,12"]);
    assert!(stdout(&k3).contains("snf: 1 2 324"));

    let b2 = run(&["ghs", "--family", "b", "--i", "2", "--m", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&b2.stdout).unwrap();
    assert_eq!(v["nonunit"], serde_json::json!(["12", "108"]));
    assert_eq!(v["bound_met"], serde_json::json!(false));
}

#[test]
fn ghs_reads_instance_files() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "k3.json",
        r#"{"d": [6, 9, 12], "graph": {"n": 3, "edges": [[1,2],[1,3],[2,3]]}}"#,
    );
    let out = run(&["ghs", &inst]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("snf: 1 2 324"));
}

#[test]
fn verify_families_holds() {
    let out = run(&["verify", "--suite", "families"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 8);
    assert!(lines.iter().all(|l| l["verdict"] == "holds"));
}

#[test]
fn verify_single_instance_not_applicable() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "k3.json",
        r#"{"d": [6, 9, 12], "graph": {"n": 3, "edges": [[1,2],[1,3],[2,3]]}}"#,
    );
    let out = run(&["verify", "--suite", "cyclic", "--instance", &inst]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("not-applicable"));
}

#[test]
fn verify_formats() {
    let csv = run(&["verify", "--suite", "families", "--format", "csv"]);
    let text = stdout(&csv);
    assert!(text.starts_with("claim,verdict,n,d,edges,snf\n"));
    assert_eq!(text.lines().count(), 9);
    let plain = run(&["verify", "--suite", "families", "--format", "text"]);
    assert!(plain.status.success());
    assert!(stdout(&plain).contains("holds"));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(run(&["snf", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--suite", "bipartite", "--primes", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["conjecture", "--n-max", "9"]).status.code(), Some(2));
}

#[test]
fn conjecture_sweep_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("cases.jsonl");
    let r = report.to_str().unwrap();
    let out = run(&[
        "conjecture",
        "--exhaustive",
        "--n-min",
        "1",
        "--n-max",
        "4",
        "--primes",
        "2,3",
        "--report",
        r,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["cases"], 2 * (1 + 2 + 8 + 64));
    assert_eq!(summary["violated"], 0);
    let lines = std::fs::read_to_string(&report).unwrap();
    assert_eq!(lines.lines().count(), 150);

    let replay = run(&["conjecture", "--replay", r]);
    assert_eq!(
        replay.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&replay.stderr)
    );
}

#[test]
fn fpp_counts_points() {
    let out = run(&["fpp", "--family", "complete", "--n", "3", "--d", "6,9,12"]);
    let text = stdout(&out);
    assert!(text.contains("points: 648"));
    assert!(text.contains("group: Z/2 ⊕ Z/324"));
    assert!(text.contains("orders match: yes"));
    let capped = run(&[
        "fpp", "--family", "complete", "--n", "3", "--d", "6,9,12", "--cap", "100",
    ]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"suite": "families", "format": "csv"}"#);
    let from_file = run(&["--config", &cfg, "verify"]);
    assert!(stdout(&from_file).starts_with("claim,verdict"));
    assert_eq!(stdout(&from_file).lines().count(), 9);

    let overridden = run(&[
        "--config", &cfg, "--format", "json", "verify", "--c-max", "1", "--i-max", "1",
    ]);
    let lines: Vec<_> = stdout(&overridden).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with('{'));

    let bad = write(dir.path(), "bad.json", r#"{"sweet": "families"}"#);
    assert_eq!(run(&["--config", &bad, "verify"]).status.code(), Some(2));
}

#[test]
fn seeded_runs_repeat() {
    let args = ["--seed", "3", "verify", "--suite", "cyclic", "--random", "20"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let other = run(&["--seed", "4", "verify", "--suite", "cyclic", "--random", "20"]);
    assert_ne!(run(&args).stdout, other.stdout);
}
