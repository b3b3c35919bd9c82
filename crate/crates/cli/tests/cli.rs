use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_roughpart");

/// 3x3 grid Laplacian pattern, lower triangle.
const GRID: &str = "%%MatrixMarket matrix coordinate real symmetric
9 9 21
1 1 4
2 1 -1
2 2 4
3 2 -1
3 3 4
4 1 -1
4 4 4
5 2 -1
5 4 -1
5 5 4
6 3 -1
6 5 -1
6 6 4
7 4 -1
7 7 4
8 5 -1
8 7 -1
8 8 4
9 6 -1
9 8 -1
9 9 4
";

fn setup() -> (TempDir, std::path::PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("grid.mtx");
    fs::write(&input, GRID).unwrap();
    (dir, input)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn basic_run_writes_partition_and_stats() {
    let (dir, input) = setup();
    let stats = dir.path().join("stats.json");
    let out = run(&[
        "--input",
        path(&input),
        "--k",
        "2",
        "--epsilon",
        "0.2",
        "--seed",
        "7",
        "--runs",
        "1",
        "--stats",
        path(&stats),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let part = fs::read_to_string(dir.path().join("grid.mtx.part.2")).unwrap();
    let lines: Vec<&str> = part.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines.iter().all(|l| *l == "0" || *l == "1"));

    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&stats).unwrap()).unwrap();
    for key in [
        "overall",
        "build",
        "recursion",
        "vcycle",
        "hcg",
        "matching",
        "coarsening",
        "initpart",
        "refinement",
        "cost",
        "imbalance",
        "runs",
    ] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["runs"].as_array().unwrap().len(), 1);
    assert_eq!(doc["runs"][0]["seed"], 7);
}

#[test]
fn stats_go_to_stdout_by_default() {
    let (dir, input) = setup();
    let out_path = dir.path().join("p.txt");
    let out = run(&[
        "--input",
        path(&input),
        "--k",
        "3",
        "--out",
        path(&out_path),
        "--runs",
        "3",
        "--quiet",
    ]);
    assert!(out.status.success());
    assert!(out.stderr.is_empty());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["runs"].as_array().unwrap().len(), 3);
    assert_eq!(fs::read_to_string(out_path).unwrap().lines().count(), 9);
}

#[test]
fn usage_errors_exit_one() {
    let (_dir, input) = setup();
    let out = run(&["--input", path(&input), "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    assert_eq!(
        run(&["--input", path(&input), "--k", "2", "--bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--k", "2"]).status.code(), Some(1));
    assert_eq!(
        run(&[
            "--input",
            path(&input),
            "--k",
            "2",
            "--sim-threshold",
            "high"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&["--input", path(&input), "--k", "20"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn runtime_errors_exit_two() {
    let (dir, _) = setup();
    let missing = dir.path().join("missing.mtx");
    assert_eq!(
        run(&["--input", path(&missing), "--k", "2"]).status.code(),
        Some(2)
    );

    let bad = dir.path().join("bad.mtx");
    fs::write(
        &bad,
        "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n3 1\n",
    )
    .unwrap();
    let out = run(&["--input", path(&bad), "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}

#[test]
fn same_seed_gives_identical_partition_files() {
    let (dir, input) = setup();
    let a = dir.path().join("a.part");
    let b = dir.path().join("b.part");
    for out in [&a, &b] {
        let status = run(&[
            "--input",
            path(&input),
            "--k",
            "4",
            "--epsilon",
            "0.5",
            "--seed",
            "3",
            "--out",
            path(out),
            "--quiet",
        ]);
        assert!(status.status.success());
    }
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}
