//! End-to-end tests of the `mosaic` binary: output shapes, exit codes,
//! cache behavior.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn mosaic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mosaic"))
        .args(args)
        .env_remove("MOSAIC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mosaic-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

#[test]
fn count_period_4x4() {
    let out = mosaic(&["count", "--quantity", "period", "-m", "4", "-n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "period(4,4) = 4934695175 [theorem-period]");
}

#[test]
fn count_toroidal_3x4() {
    let out = mosaic(&["count", "--quantity", "toroidal", "-m", "3", "-n", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1662837"));
    assert!(stdout(&out).contains("theorem-coprime"));
}

#[test]
fn count_knot_2x2() {
    let out = mosaic(&["count", "--quantity", "knot", "-m", "2", "-n", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 2 [theorem-knot]"));
}

#[test]
fn json_output_uses_decimal_strings() {
    let out = mosaic(&[
        "count", "--quantity", "toroidal", "-m", "2", "-n", "3", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["m"], 2);
    assert_eq!(value["n"], 3);
    assert_eq!(value["quantity"], "toroidal");
    assert_eq!(value["method"], "theorem-coprime");
    assert_eq!(value["value"], "954");
    assert!(value["value"].is_string());
}

#[test]
fn oracle_method_override() {
    let out = mosaic(&[
        "count", "--quantity", "toroidal", "-m", "2", "-n", "2", "--method", "oracle",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= 110 [oracle]"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = mosaic(&["count", "--quantity", "toroidal", "-m", "4", "-n", "4"]);
    let b = mosaic(&["count", "--quantity", "toroidal", "-m", "4", "-n", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    // unknown quantity (clap refuses)
    let out = mosaic(&["count", "--quantity", "knots", "-m", "2", "-n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // method precondition violated: (2,4) is not co-prime
    let out = mosaic(&[
        "count", "--quantity", "toroidal", "-m", "2", "-n", "4", "--method", "theorem-coprime",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // knot theorem needs m, n >= 2
    let out = mosaic(&["count", "--quantity", "knot", "-m", "1", "-n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_refusals_exit_3() {
    let out = mosaic(&[
        "count", "--quantity", "period", "-m", "5", "-n", "5", "--max-dim-cap", "16",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = mosaic(&["enumerate", "-m", "4", "-n", "4", "--predicate", "period"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerate_period_1x1() {
    let out = mosaic(&["enumerate", "-m", "1", "-n", "1", "--predicate", "period", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "7");

    let out = mosaic(&["enumerate", "-m", "1", "-n", "1", "--predicate", "period"]);
    let text = stdout(&out);
    let blocks: Vec<&str> = text.split("\n\n").filter(|b| !b.trim().is_empty()).collect();
    assert_eq!(blocks.len(), 7);
    assert!(blocks[0].starts_with("1 1"));
}

#[test]
fn catalog_has_110_representatives() {
    let out = mosaic(&["catalog", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["classes"], 110);
    assert_eq!(value["representatives"].as_array().unwrap().len(), 110);

    let dir = temp_dir("catalog");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.txt");
    let out = mosaic(&["catalog", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.matches("# class ").count(), 110);
    assert!(text.contains("98 - 10 + 22 = 110"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_period_diagonal_max_3() {
    let out = mosaic(&["table", "period-diagonal", "--max", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,period_count,growth_root"));
    assert_eq!(lines.next(), Some("1,7,7.000000"));
    assert_eq!(lines.next(), Some("2,359,4.352849"));
    assert_eq!(lines.next(), Some("3,316249,4.084269"));

    let out = mosaic(&["table", "period-diagonal", "--max", "1"]);
    assert!(stdout(&out).contains("7.000000"));
}

#[test]
fn table_toroidal_grid_max_2() {
    let out = mosaic(&["table", "toroidal-grid", "--max", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for value in ["7", "18", "110"] {
        assert!(text.contains(value), "missing {value} in grid:\n{text}");
    }
    // upper-triangular: the (2,1) slot is blank
    let m2_line = text.lines().find(|l| l.trim_start().starts_with("m=2")).unwrap();
    assert!(!m2_line.contains("18"));
}

#[test]
fn verify_tables_passes() {
    let out = mosaic(&["verify", "tables"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all 31 checks passed"));
}

#[test]
fn cache_journal_hits_and_corruption() {
    let dir = temp_dir("cache");
    let dir_str = dir.to_str().unwrap();

    // first run computes and journals
    let out = mosaic(&[
        "count", "--quantity", "period", "-m", "2", "-n", "2", "--cache-dir", dir_str,
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[theorem-period]"));
    let journal = dir.join("counts.jsonl");
    assert!(journal.exists());
    assert!(dir.join("matrices").join("period-sum_m2.mat").exists());

    // second run is served from the journal and labeled as such
    let out = mosaic(&[
        "count", "--quantity", "period", "-m", "2", "-n", "2", "--cache-dir", dir_str,
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[cache:theorem-period]"));

    // --no-cache bypasses the journal
    let out = mosaic(&[
        "count", "--quantity", "period", "-m", "2", "-n", "2", "--cache-dir", dir_str, "--no-cache",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[theorem-period]"));

    // a clean cache passes verification (tiny oracle scope keeps this fast)
    let out = mosaic(&["verify", "all", "--cache-dir", dir_str, "--oracle-cap", "4"]);
    assert!(out.status.success(), "clean cache should verify");

    // corrupt the journaled value: verification must fail with exit 1
    let text = fs::read_to_string(&journal).unwrap();
    fs::write(&journal, text.replace("359", "360")).unwrap();
    let out = mosaic(&["verify", "all", "--cache-dir", dir_str, "--oracle-cap", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH"));

    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn env_var_selects_cache_dir() {
    let dir = temp_dir("env-cache");
    let out = Command::new(env!("CARGO_BIN_EXE_mosaic"))
        .args(["count", "--quantity", "period", "-m", "1", "-n", "1"])
        .env("MOSAIC_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("counts.jsonl").exists());
    fs::remove_dir_all(&dir).unwrap();
}
