use std::path::Path;
use std::process::{Command, Output};

fn hilbring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbring"))
        .args(args)
        .env_remove("HILBRING_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn theta_example() {
    let out = hilbring(&["theta", "[0,1]", "[1]", "[1]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");

    let out = hilbring(&["theta", "[0,1]", "[1]", "[1]", "--oracle-d", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["theta"], "3");
    assert_eq!(v["oracle"], "3");
}

#[test]
fn multiply_recursion_and_oracle_agree() {
    let a = hilbring(&["multiply", "[1]", "[0,1]", "--d", "6", "--json"]);
    let b = hilbring(&["multiply", "[1]", "[0,1]", "--d", "6", "--json", "--oracle"]);
    let (mut a, mut b): (serde_json::Value, serde_json::Value) =
        (serde_json::from_str(&stdout(&a)).unwrap(), serde_json::from_str(&stdout(&b)).unwrap());
    assert_eq!(a["method"], "recursion");
    a["method"].take();
    b["method"].take();
    assert_eq!(a, b);
}

#[test]
fn relation_table_through_six() {
    let out = hilbring(&["relation-table", "--max-d", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let totals: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit('\t').next().unwrap()).collect();
    assert_eq!(totals, ["0", "1", "1", "3", "3", "6"]);
}

#[test]
fn verify_exit_status() {
    assert!(hilbring(&["verify", "--d", "4"]).status.success());
    // The printed A(8) list contains two relations that do not vanish.
    assert_eq!(hilbring(&["verify", "--d", "8"]).status.code(), Some(1));
    assert!(hilbring(&["verify", "--d", "8", "--corrected"]).status.success());
    assert!(hilbring(&["verify", "--d", "3", "--relation", "x^3"]).status.success());
    assert_eq!(hilbring(&["verify", "--d", "3", "--relation", "x^2"]).status.code(), Some(1));
    assert_eq!(hilbring(&["verify", "--d", "3", "--relation", "y"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hilbring(&["bogus"]).status.code(), Some(2));
    assert_eq!(hilbring(&["presentation", "--d", "11"]).status.code(), Some(2));
    assert_eq!(hilbring(&["theta", "[x]", "[1]", "[1]"]).status.code(), Some(2));
    assert_eq!(hilbring(&["multiply", "[1]", "[1]", "--d", "12", "--oracle"]).status.code(), Some(2));
}

#[test]
fn presentation_json_has_schema() {
    let out = hilbring(&["presentation", "--d", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["total"], 6);
    assert_eq!(v["generators"], serde_json::json!(["x", "y", "z"]));
}

fn presentation_with_cache(cache: &Path, threads: &str) -> Output {
    let cache = cache.to_str().unwrap();
    hilbring(&["--threads", threads, "--cache", cache, "presentation", "--d", "9", "--format", "json"])
}

#[test]
fn output_ignores_cache_warmth_and_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("theta-cache.json");
    let cold = presentation_with_cache(&cache, "1");
    assert!(cold.status.success());
    assert!(cache.exists());
    let warm = presentation_with_cache(&cache, "4");
    assert_eq!(cold.stdout, warm.stdout);
    let uncached = hilbring(&["--no-cache", "presentation", "--d", "9", "--json"]);
    assert_eq!(cold.stdout, uncached.stdout);
}

#[test]
fn corrupt_cache_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.json");
    std::fs::write(&cache, "{not json").unwrap();
    let out = hilbring(&["--cache", cache.to_str().unwrap(), "theta", "[1]", "[1]", "[]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identities_emit_json() {
    let out = hilbring(&["identities", "--suite", "pascal"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
}
