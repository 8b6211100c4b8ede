use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn conjgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conjgen"))
        .args(args)
        .env_remove("CONJGEN_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const Z2XZ2: &str = r#"{"order": 4, "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]}"#;
const S3: &str = r#"{"degree": 3, "generators": ["(0 1 2)", "(0 1)"]}"#;

#[test]
fn group_analyze_klein() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "z2xz2.json", Z2XZ2);
    let out = conjgen(&["group", "analyze", &file]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["almost_cyclic"], false);
    assert_eq!(v["conjugate_generators"], serde_json::json!([]));
    assert_eq!(
        conjgen(&["--strict", "group", "analyze", &file])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn group_analyze_cyclic_has_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "z3.json",
        r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}"#,
    );
    let out = conjgen(&["--strict", "group", "analyze", &file]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["almost_cyclic"], true);
    assert_eq!(v["conjugate_generators"], serde_json::json!([1, 2]));
    assert_eq!(v["certificate"]["generator"], 1);
}

#[test]
fn group_subgroups_of_s3() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s3.json", S3);
    let out = conjgen(&["group", "subgroups", &file]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 6);
    assert_eq!(v["count"], 6);
    let normal = v["subgroups"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|h| h["normal"] == true)
        .count();
    assert_eq!(normal, 3);
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(
        dir.path(),
        "broken.json",
        r#"{"order": 2, "table": [[0,1],[1,1]]}"#,
    );
    let out = conjgen(&["group", "analyze", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json"));
    assert_eq!(
        conjgen(&["group", "analyze", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(conjgen(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        conjgen(&["presentation", "analyze", "< t | t^ >"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        conjgen(&["presentation", "analyze", "< t | t^2, t^3 >"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn order_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s3.json", S3);
    let out = Command::new(env!("CARGO_BIN_EXE_conjgen"))
        .args(["group", "analyze", &file])
        .env("CONJGEN_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_conjgen"))
        .args(["verify", "--max-order", "12"])
        .env("CONJGEN_MAX_ORDER", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn presentation_verdicts() {
    let out = conjgen(&["presentation", "analyze", "< t,u | t u t^-1 u^-2 >"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classification"], "CyclicIfAlmostCyclic");
    assert_eq!(v["transformed"], "< t, u | t u t^-1 u^-2 >");

    let comm = ["presentation", "analyze", "< a, b, c | a b a^-1 b^-1 >"];
    assert_eq!(json(&conjgen(&comm))["classification"], "NotAlmostCyclic");
    let strict: Vec<&str> = std::iter::once("--strict").chain(comm).collect();
    assert_eq!(conjgen(&strict).status.code(), Some(1));
}

#[test]
fn verify_json_report() {
    let out = conjgen(&[
        "verify",
        "--max-order",
        "12",
        "--exhaustive-order",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["config"]["max_order"], 12);
    assert_eq!(v["config"]["exhaustive_order"], 5);
    let text = conjgen(&["verify", "--max-order", "8", "--exhaustive-order", "3"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("fail 0"));
}

#[test]
fn verify_is_deterministic_across_jobs() {
    let run = |jobs: &str| {
        let out = conjgen(&["verify", "--format", "json", "--jobs", jobs]);
        assert_eq!(out.status.code(), Some(0));
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("run");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn verify_surfaces_corrupted_extra_group() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "corrupt.json",
        r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,0,2]]}"#,
    );
    let out = conjgen(&["verify", "--max-order", "8", "--extra", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt"));
    assert!(out.stdout.is_empty());

    let good = write(dir.path(), "mine.json", S3);
    let out = conjgen(&[
        "verify",
        "--max-order",
        "8",
        "--format",
        "json",
        "--extra",
        &good,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["group"] == "mine"));
}

#[test]
fn enumerate_small_orders() {
    let out = conjgen(&["enumerate", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 2);
    assert_eq!(v["groups"].as_array().unwrap().len(), 2);
    assert_eq!(
        conjgen(&["enumerate", "--order", "9"]).status.code(),
        Some(2)
    );
}
