//! End-to-end runs of the binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cycleforge")
}

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .env("CYCLEFORGE_CACHE", cache)
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["frobnicate"]);
    assert!(!out.status.success());
}

#[test]
fn missing_required_arguments_fail() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["hurwitz", "components"]);
    assert!(!out.status.success());
}

#[test]
fn components_reports_are_cached_and_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");
    let first = run(
        dir.path(),
        &["hurwitz", "components", "--genus", "2", "--out", out_a.to_str().unwrap()],
    );
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let second = run(
        dir.path(),
        &["hurwitz", "components", "--genus", "2", "--out", out_b.to_str().unwrap()],
    );
    assert!(second.status.success());
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "warm-cache report must be byte-identical");
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["orbits"].as_array().unwrap().len(), 2);
    assert_eq!(report["class_count"], 41216);
}

#[test]
fn version_bump_invalidates_cache_entries() {
    // the cache key embeds the crate version, so entries written by another
    // version are simply not found
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("hurwitz-orbits-0000000000000000-v9.9.9.bin"), b"junk")
        .unwrap();
    let out = run(dir.path(), &["hurwitz", "replay", "--degree", "2", "--tuple", "(1 2);(1 2)", "--moves", "1"]);
    assert!(out.status.success());
}

#[test]
fn cyclespace_writes_matrix_and_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("matrix.csv");
    let kernel = dir.path().join("kernel.json");
    let out = run(
        dir.path(),
        &[
            "cyclespace",
            "--n",
            "2",
            "--out",
            csv.to_str().unwrap(),
            "--kernel",
            kernel.to_str().unwrap(),
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    let header = csv_text.lines().next().unwrap();
    assert!(header.starts_with("point_class,"));
    assert!(header.contains("{()|()}"));
    assert_eq!(csv_text.lines().count(), 1 + 4); // 4 point classes at n = 2
    let kernel: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&kernel).unwrap()).unwrap();
    assert_eq!(kernel["dimension"], 1);
    // entries are exact rational strings
    assert!(kernel["basis"][0][0].is_string());
}

#[test]
fn cyclespace_oracle_flag_matches_assembled_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let fast = run(dir.path(), &["cyclespace", "--n", "3", "--out", a.to_str().unwrap()]);
    let slow = run(
        dir.path(),
        &["cyclespace", "--n", "3", "--oracle", "--out", b.to_str().unwrap()],
    );
    assert!(fast.status.success() && slow.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn hypcheck_passes_at_n3() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["hypcheck", "--n", "3"]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["image_dim"], 1);
}

#[test]
fn ellreg_rejects_degenerate_lambda() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["ellreg", "--lambda", "1"]);
    assert!(!out.status.success());
}

#[test]
fn fourconfig_explicit_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "fourconfig", "--a1", "2", "--a2", "-2", "--b1", "2i", "--b2", "-2i",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["boundary_zero"], true);
    assert_eq!(report["conditions"]["f_at_zero"], "1");
}

#[test]
fn verify_fast_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("report_a.json");
    let out_b = dir.path().join("report_b.json");
    let first = run(
        dir.path(),
        &["verify", "--all", "--fast", "--out", out_a.to_str().unwrap()],
    );
    assert!(
        first.status.success(),
        "stdout: {} stderr: {}",
        String::from_utf8_lossy(&first.stdout),
        String::from_utf8_lossy(&first.stderr)
    );
    let second = run(
        dir.path(),
        &["verify", "--all", "--fast", "--out", out_b.to_str().unwrap()],
    );
    assert!(second.status.success());
    let a = std::fs::read(&out_a).unwrap();
    assert_eq!(a, std::fs::read(&out_b).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert!(report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["status"] == "pass"));
}

#[test]
fn verify_claim_subset() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["verify", "--fast", "--claims", "hurwitz-move-replays,fourconfig-boundary"],
    );
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("hurwitz-move-replays"));
    let report_start = text.find('{').unwrap();
    let report: serde_json::Value = serde_json::from_str(&text[report_start..]).unwrap();
    let entries = report["entries"].as_array().unwrap();
    let skipped = entries.iter().filter(|e| e["status"] == "skipped").count();
    assert_eq!(skipped, entries.len() - 2);
}
