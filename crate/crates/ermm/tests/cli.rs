use std::fs;
use std::path::Path;

use ermm::cli::run;

fn ermm(args: &[&str]) -> i32 {
    run(std::iter::once("ermm").chain(args.iter().copied()))
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn tree_count_table_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    assert_eq!(ermm(&["tables", "--seq", "d", "--q", "2", "--kmax", "4", "-o", out.to_str().unwrap()]), 0);
    let text = read(&out);
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(values, ["1", "4", "32", "400"]);
}

#[test]
fn verify_all_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.csv");
    assert_eq!(ermm(&["verify", "--suite", "all", "-o", out.to_str().unwrap()]), 0);
    let text = read(&out);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")), "{text}");
}

#[test]
fn json_report_carries_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat.json");
    assert_eq!(ermm(&["tables", "--seq", "catalan", "--kmax", "5", "--format", "json", "-o", out.to_str().unwrap()]), 0);
    let value: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(value["metadata"]["seed"], "7");
    assert_eq!(value["rows"][5]["value"], "42");
}

#[test]
fn simulation_reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &str| {
        let path = dir.path().join(name);
        let list = ["simulate", "--model", "Y", "--q", "2", "--k", "2", "--regime", "sparse", "--c", "2", "--n", "500,1000", "--samples", "200", "--seed", "3"];
        let mut v: Vec<String> = list.iter().map(|s| s.to_string()).collect();
        v.push("-o".into());
        v.push(path.to_str().unwrap().into());
        (v, path)
    };
    let (a, pa) = args("a.csv");
    let (b, pb) = args("b.csv");
    assert_eq!(run(std::iter::once("ermm".to_string()).chain(a)), 0);
    assert_eq!(run(std::iter::once("ermm".to_string()).chain(b)), 0);
    assert_eq!(fs::read(pa).unwrap(), fs::read(pb).unwrap());
}

#[test]
fn config_file_is_overlaid_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"command": "tables", "seq": "h", "q": 3, "kmax": 2}"#).unwrap();
    let out = dir.path().join("h.csv");
    assert_eq!(ermm(&["--config", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()]), 0);
    assert!(read(&out).contains("h_2^(3)"));
    assert_eq!(ermm(&["--config", cfg.to_str().unwrap(), "tables", "--seq", "h", "--q", "2", "-o", out.to_str().unwrap()]), 0);
    assert!(read(&out).contains("h_2^(2)"));
}

#[test]
fn plot_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let plots = dir.path().join("plots");
    let out = dir.path().join("fe.csv");
    assert_eq!(ermm(&["free-energy", "--t", "0,1/2", "--plot", plots.to_str().unwrap(), "-o", out.to_str().unwrap()]), 0);
    let dat = read(&plots.join("free-energy.dat"));
    assert_eq!(dat.lines().count(), 3);
    assert!(dat.starts_with("# t "));
}

#[test]
fn dumps_are_plain_text() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("oracle.csv");
    assert_eq!(ermm(&["oracle-dump", "--n", "3", "-o", out.to_str().unwrap()]), 0);
    assert_eq!(read(&out).lines().count(), 1 + 8);
    let out = dir.path().join("diagrams.tsv");
    assert_eq!(ermm(&["diagrams-dump", "--model", "Y", "--q", "2", "--k", "3", "--filter", "tree-arcs", "-o", out.to_str().unwrap()]), 0);
    assert_eq!(read(&out).lines().count(), 1 + 128);
}

#[test]
fn exit_codes() {
    assert_eq!(ermm(&["frobnicate"]), 2);
    assert_eq!(ermm(&["tables"]), 2);
    assert_eq!(ermm(&["tables", "--seq", "limit", "--model", "X", "--q", "2", "--regime", "full"]), 2);
    assert_eq!(ermm(&["oracle-dump", "--n", "6"]), 3);
    assert_eq!(ermm(&["--config", "/nonexistent/run.json", "tables"]), 2);
}
