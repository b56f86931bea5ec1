//! End-to-end checks through the built binary.

use std::path::Path;
use std::process::Command;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_discovery"))
}

fn write_config(dir: &Path, extra: &str) -> std::path::PathBuf {
    let path = dir.join("run.conf");
    let base = "\
mode = varying-omega
experiment_count = 5
seed = 42
q_max = 14
eps_sv = 1e-6
";
    std::fs::write(&path, format!("{base}{extra}")).unwrap();
    path
}

#[test]
fn discover_writes_reports_and_prints_equations() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "");
    let report_path = dir.path().join("report.json");

    let output = binary()
        .args(["discover", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(&report_path)
        .output()
        .expect("binary runs");
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));

    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("∇×E + ∂t B = 0"), "stdout was: {stdout}");
    assert!(stdout.contains("∇·E = 0"));

    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(json["found"].as_array().unwrap().len(), 6);
    assert_eq!(json["c_estimates"].as_array().unwrap().len(), 3);
    assert!(dir.path().join("report.txt").exists());
}

#[test]
fn discover_honors_cli_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "");
    let report_path = dir.path().join("short.json");

    let output = binary()
        .args(["discover", "--q-max", "4", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(output.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(json["found"].as_array().unwrap().len(), 2);
    assert_eq!(json["config"]["q_max"], 4);
}

#[test]
fn bench_writes_the_csv_table() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "");
    let csv_path = dir.path().join("bench.csv");

    let output = binary()
        .args(["bench", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(&csv_path)
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));

    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert!(text.starts_with("mode,depth,cumulative_candidates,wall_seconds\n"));
    assert!(text.lines().any(|l| l.starts_with("slow,12,4095,")));
}

#[test]
fn unknown_config_keys_fail_loudly() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "surprise = 1\n");
    let output = binary()
        .args(["discover", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("unknown key"), "stderr was: {stderr}");
}
