use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_excseq");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn lines(args: &[&str]) -> usize {
    stdout(args).lines().count()
}

#[test]
fn enumerate_counts() {
    assert_eq!(lines(&["enumerate", "--family", "tube", "--n", "4", "--k", "3"]), 64);
    assert_eq!(lines(&["enumerate", "--family", "pointed", "--n", "3"]), 27);
    assert_eq!(lines(&["enumerate", "--family", "cn", "--n", "3", "--k", "3", "--signed"]), 120);
    assert_eq!(lines(&["enumerate", "--family", "cn", "--n", "3"]), 27);
    assert_eq!(lines(&["enumerate", "--family", "an", "--n", "3"]), 16);
    assert_eq!(lines(&["enumerate", "--family", "tree", "--n", "4"]), 64);
    assert_eq!(lines(&["enumerate", "--family", "tree", "--n", "3", "--augmented"]), 27);
    assert_eq!(lines(&["enumerate", "--family", "forest", "--n", "3"]), 16);
    assert_eq!(lines(&["enumerate", "--family", "diagram", "--n", "4"]), 64);
    assert_eq!(lines(&["enumerate", "--family", "tube", "--n", "4", "--soft"]), 256);
    assert_eq!(lines(&["enumerate", "--family", "tube", "--n", "3", "--k", "2", "--signed"]), 12);
}

#[test]
fn enumerate_records_are_json() {
    let out = stdout(&["enumerate", "--family", "cn", "--n", "2", "--signed"]);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["modules"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn sampling_is_reproducible() {
    let a = stdout(&["enumerate", "--family", "pointed", "--n", "4", "--limit", "5", "--seed", "11"]);
    let b = stdout(&["enumerate", "--family", "pointed", "--n", "4", "--limit", "5", "--seed", "11"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 5);
    let all = stdout(&["enumerate", "--family", "pointed", "--n", "4"]);
    let positions: Vec<usize> = a.lines().map(|l| all.lines().position(|m| m == l).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(lines(&["enumerate", "--family", "pointed", "--n", "4", "--limit", "7"]), 7);
}

#[test]
fn count_formulas_and_enumerations() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["count", "--kind", "signed-cn", "--n", "3", "--k", "3"])).unwrap();
    assert_eq!(v["value"], "120");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["count", "--kind", "excsets-cn", "--n", "3"])).unwrap();
    assert_eq!(v["value"], "21");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["count", "--family", "tube", "--n", "4"])).unwrap();
    assert_eq!(v["count"], 64);
}

#[test]
fn map_tube_sequence_to_forest() {
    let out = stdout(&["map", "--from", "tube-seq", "--to", "forest", "--input", r#"{"n":4,"objects":[[3,0],[1,2],[1,3]]}"#, "--round-trip"]);
    assert_eq!(out.trim(), r#"{"n":4,"parent":[0,3,0],"epsilon_map":[0,3,3,1]}"#);
}

#[test]
fn map_signed_tube_to_signed_cn() {
    let out = stdout(&[
        "map",
        "--from",
        "signed-tube",
        "--to",
        "signed-cn",
        "--input",
        r#"{"n":4,"objects":[[3,0],[1,2],[1,3]],"shifted":[false,true,false]}"#,
        "--round-trip",
    ]);
    assert_eq!(out.trim(), r#"{"n":3,"modules":[[0,0],[1,2],[1,0]],"shifted":[true,true,false]}"#);
}

#[test]
fn map_tree_to_diagram_and_back() {
    let out = stdout(&["map", "--from", "tree", "--to", "diagram", "--input", r#"{"n":4,"parent":[2,0,4,2],"epsilon":3}"#, "--round-trip"]);
    assert_eq!(out.trim(), r#"{"n":4,"chords":[[3,0],[3,3],[1,2],[1,3]]}"#);
}

#[test]
fn map_reads_standard_input() {
    let mut child = Command::new(BIN)
        .args(["map", "--from", "cn-seq", "--to", "diagram", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"n":2,"modules":[[0,1],[0,0]]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"n":2,"chords":[[0,1],[0,0]]}"#);
}

#[test]
fn invalid_input_exits_with_two() {
    let bad_shift = run(&["map", "--from", "signed-tube", "--to", "signed-cn", "--input", r#"{"n":4,"objects":[[3,0],[1,2],[1,3]],"shifted":[true,false,false]}"#]);
    assert_eq!(bad_shift.status.code(), Some(2));
    assert_eq!(run(&["map", "--from", "diagram", "--to", "tree", "--input", r#"{"n":4,"chords":[[1,3],[1,2]]}"#]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--family", "tube"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["render", "--from", "tube-seq", "--input", r#"{"n":2,"objects":[]}"#]).status.code(), Some(2));
    assert_eq!(run(&["--jobs", "0", "verify"]).status.code(), Some(2));
}

#[test]
fn braid_words_act() {
    let out = stdout(&["braid", "--family", "tree", "--word", "s1 s2", "--input", r#"{"n":3,"parent":[3,0,2]}"#]);
    assert_eq!(out.trim(), r#"{"n":3,"parent":[3,1,0]}"#);
    let out = stdout(&["braid", "--family", "tree", "--word", "s2' s1'", "--input", r#"{"n":3,"parent":[3,1,0]}"#]);
    assert_eq!(out.trim(), r#"{"n":3,"parent":[3,0,2]}"#);
    let report = stdout(&["braid", "--family", "pointed", "--n", "3"]);
    assert!(report.contains("\"relation\""));
    assert_eq!(run(&["braid", "--family", "tree", "--word", "s5", "--input", r#"{"n":3,"parent":[3,0,2]}"#]).status.code(), Some(2));
}

#[test]
fn stats_report_marginals() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["stats", "--family", "tube", "--n", "4"])).unwrap();
    let probs: Vec<&str> = v["marginals"].as_array().unwrap().iter().map(|m| m["probability"].as_str().unwrap()).collect();
    assert_eq!(probs, ["1/2", "1/4", "0/1"]);
    assert_eq!(v["independent"], true);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["stats", "--family", "tube", "--n", "4", "--injective"])).unwrap();
    let probs: Vec<&str> = v["marginals"].as_array().unwrap().iter().map(|m| m["probability"].as_str().unwrap()).collect();
    assert_eq!(probs, ["0/1", "1/4", "1/2"]);
}

#[test]
fn verify_selected_suites() {
    for suite in ["braid", "theorem-f", "counts"] {
        let n = if suite == "braid" { "4" } else { "5" };
        let out = run(&["verify", "--suite", suite, "--n-max", n]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn verify_writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("excseq-report-{}.json", std::process::id()));
    let out = run(&["verify", "--suite", "sets", "--output", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suites"][0]["suite"], "sets");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn render_documents() {
    let svg = stdout(&["render", "--from", "diagram", "--input", r#"{"n":4,"chords":[[3,0],[3,3],[1,2],[1,3]]}"#]);
    assert!(svg.starts_with("<svg") && svg.contains("fill=\"blue\">2</text>"));
    let svg = stdout(&["render", "--from", "forest", "--input", r#"{"n":4,"parent":[0,3,0],"epsilon_map":[0,3,3,1]}"#]);
    assert_eq!(svg.matches("fill=\"#ddd\"").count(), 2);
    let dot = stdout(&["render", "--from", "tree", "--format", "dot", "--input", r#"{"n":4,"parent":[2,0,4,2],"epsilon":3}"#]);
    assert!(dot.starts_with("digraph") && dot.contains("v2 -> v4;"));
    let empty = stdout(&["render", "--from", "diagram", "--input", r#"{"n":5,"chords":[]}"#]);
    assert!(!empty.contains("<line"));
}
