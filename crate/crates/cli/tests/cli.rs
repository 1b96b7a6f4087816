use std::io::Write;
use std::process::{Command, Output, Stdio};

fn metadice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metadice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn metadice_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_metadice"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn tables_rows() {
    let out = metadice(&["tables", "--depth", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "D1 222 489 954"));
    assert!(stdout(&out).lines().any(|l| l == "D27 345 513 777"));
    let out = metadice(&["tables", "--depth", "2"]);
    assert!(stdout(&out).lines().any(|l| l == "Die 5 11 66 88"));
    let out = metadice(&["tables", "--depth", "1"]);
    let rows: Vec<String> = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect();
    assert_eq!(rows, ["Die A 2 4 9", "Die B 1 6 8", "Die C 3 5 7"]);
    assert_eq!(metadice(&["tables", "--depth", "4"]).status.code(), Some(2));
}

#[test]
fn tables_pipe_into_verify() {
    for depth in ["1", "2", "3"] {
        let tables = stdout(&metadice(&["tables", "--depth", depth]));
        let out = metadice_stdin(&["verify", "--stdin"], &tables);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    }
}

#[test]
fn prob_outputs() {
    let first_line = |args: &[&str]| stdout(&metadice(args)).lines().next().unwrap().to_string();
    assert_eq!(first_line(&["prob", "2,4,9", "1,6,8"]), "5/9 0 4/9");
    assert_eq!(
        first_line(&["prob", "222,489,954", "122,689,854"]),
        "5/9 0 4/9"
    );
    assert_eq!(first_line(&["prob", "2,4,9", "2,4,9"]), "1/3 1/3 1/3");
    assert_eq!(first_line(&["prob", "2x2,4x2,9x2", "1,6,8"]), "5/9 0 4/9");
    let out = metadice(&["prob", "2,4,9", "1,6,8"]);
    assert_eq!(
        stdout(&out).lines().nth(1),
        Some("0.555556 0.000000 0.444444")
    );
}

#[test]
fn prob_parse_errors() {
    let out = metadice(&["prob", "2,4,9", "1,6a,8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("position 3"), "{}", stderr(&out));
    let out = metadice(&["prob", "0,4,9", "1,6,8"]);
    assert_eq!(out.status.code(), Some(2));
    let out = metadice(&["prob", "--allow-zero", "0,4,9", "1,6,8"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn roundrobin_outputs() {
    for (a, b) in [("4,9,2", "3,5,7"), ("3,5,7", "8,1,6"), ("8,1,6", "4,9,2")] {
        let out = metadice(&["roundrobin", a, b]);
        assert_eq!(stdout(&out), "A:4 B:5\n");
    }
    let out = metadice(&["roundrobin", "1,2", "2,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_uniform_depths() {
    let out = metadice(&["verify", "--depth", "5", "--stack", "uniform"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("29403 pairs, 0 failures"));
    let out = metadice(&[
        "verify", "--preset", "uniform", "--depth", "4", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pairs_checked"], 3240);
    assert_eq!(v["failure_count"], 0);
    assert!(v.get("elapsed").is_none());
}

#[test]
fn family_source_rules() {
    // uniform needs a depth; fixed presets carry their own
    assert_eq!(
        metadice(&["verify", "--preset", "uniform"]).status.code(),
        Some(2)
    );
    assert_eq!(
        metadice(&["verify", "--preset", "paper-3", "--depth", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        metadice(&["verify", "--preset", "paper-3", "--stack", "x.txt"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(metadice(&["verify"]).status.code(), Some(2));
    assert_eq!(metadice(&["verify", "--depth", "9"]).status.code(), Some(2));
    assert_eq!(
        metadice(&["verify", "--stack", "/nonexistent/stack.txt"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn stack_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("paper3.txt");
    std::fs::write(
        &good,
        "# paper-3\n2,4,9;1,6,8;3,5,7\n2,8,5;9,6,3;4,1,7\n2,9,4;1,8,6;3,7,5 rot=w2\n",
    )
    .unwrap();
    let out = metadice(&[
        "generate",
        "--stack",
        good.to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("D1 000 222x2,489x2,954x2\n"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2,8,5;9,6,3;4,1,7\n").unwrap();
    let out = metadice(&["verify", "--stack", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("leading") && err.contains("level 1"), "{err}");
    assert!(err.contains("3 of 9"), "{err}");
}

#[test]
fn generated_json_verifies_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("family.json");
    let out = metadice(&[
        "generate",
        "--preset",
        "paper-3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = metadice(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&path, "{not json").unwrap();
    let out = metadice(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_exports() {
    let out = metadice(&["graph", "--preset", "paper-3"]);
    let dot = stdout(&out);
    assert_eq!(dot.matches(" -> ").count(), 27);
    let out = metadice(&["graph", "--preset", "paper-2", "--full-graph"]);
    assert_eq!(stdout(&out).matches(" -> ").count(), 36);
    let out = metadice(&["graph", "--preset", "paper-1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["edges"][0]["probability"], "5/9");
    assert_eq!(
        metadice(&["graph", "--preset", "paper-1", "--level", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        metadice(&["graph", "--preset", "paper-1", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn normalize_outputs() {
    let out = metadice(&["normalize", "--preset", "paper-3"]);
    let csv = stdout(&out);
    assert_eq!(csv.lines().count(), 82);
    assert!(csv.contains("001,2,0,0.221,221,1000"));
    let out = metadice(&["normalize", "--preset", "paper-1", "--format", "text"]);
    assert_eq!(
        stdout(&out),
        "0.2\n0.4\n0.9\n0.1\n0.6\n0.8\n0.3\n0.5\n0.7\n"
    );
}

#[test]
fn simulate_is_seeded() {
    let args = [
        "simulate",
        "2x2,4x2,9x2",
        "1x2,6x2,8x2",
        "--trials",
        "5000",
        "--seed",
        "9",
    ];
    let a = stdout(&metadice(&args));
    assert_eq!(a, stdout(&metadice(&args)));
    assert!(a.contains("exact 5/9"));
    assert_eq!(
        metadice(&["simulate", "2,4,9", "1,6,8", "--trials", "0"])
            .status
            .code(),
        Some(2)
    );
    let out = metadice(&["simulate", "9", "1", "--trials", "10"]);
    assert!(stdout(&out).starts_with("estimate 1.000000"));
}
