use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rlstorage(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlstorage"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn small_config(dir: &Path) {
    fs::write(
        dir.join("small.conf"),
        "experiment.train_episodes = 2\nworkload.total_ops = 600\nexperiment.seeds = 1,2\n",
    )
    .unwrap();
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(rlstorage(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(rlstorage(dir.path(), &["--version"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(rlstorage(dir.path(), &["--frobnicate"]).status.code(), Some(1));
    assert_eq!(rlstorage(dir.path(), &[]).status.code(), Some(1));
    assert_eq!(rlstorage(dir.path(), &["report", "--format", "xml"]).status.code(), Some(1));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.conf"), "tunables.queue_depth = 3\n").unwrap();
    let out = rlstorage(dir.path(), &["--config", "bad.conf", "simulate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config error"));
    let out = rlstorage(dir.path(), &["--config", "missing.conf", "simulate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    small_config(dir.path());
    let out = rlstorage(dir.path(), &["--config", "small.conf", "evaluate", "--agent", "nope.bin"]);
    assert_eq!(out.status.code(), Some(3));
    fs::write(dir.path().join("junk.bin"), b"not an agent").unwrap();
    let out = rlstorage(dir.path(), &["--config", "small.conf", "evaluate", "--agent", "junk.bin"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn simulate_writes_baseline_outputs() {
    let dir = tempfile::tempdir().unwrap();
    small_config(dir.path());
    let out = rlstorage(dir.path(), &["--config", "small.conf", "--out", "o", "simulate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = fs::read_to_string(dir.path().join("o/summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 2);
    assert!(summary.lines().nth(1).unwrap().contains(",static,1.000000,"));
    assert!(dir.path().join("o/trace-1.txt").exists());
    assert!(dir.path().join("o/trace-2.txt").exists());
}

#[test]
fn train_then_evaluate_saved_agent() {
    let dir = tempfile::tempdir().unwrap();
    small_config(dir.path());
    let out = rlstorage(dir.path(), &["--config", "small.conf", "--seed", "7", "--out", "o", "train"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let agent = dir.path().join("o/agent-7.bin");
    assert_eq!(fs::read(&agent).unwrap().len(), 2282);
    let out = rlstorage(
        dir.path(),
        &["--config", "small.conf", "--seed", "7", "--out", "e", "evaluate", "--agent", "o/agent-7.bin"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let metrics = fs::read_to_string(dir.path().join("e/metrics.csv")).unwrap();
    assert!(metrics.starts_with("experiment,workload,device,policy,seed,interval,"));
    assert!(metrics.contains(",tabular,7,"));
}

#[test]
fn report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    small_config(dir.path());
    let args = ["--config", "small.conf", "report", "--format", "csv"];
    let a = rlstorage(dir.path(), &args);
    let b = rlstorage(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_dump_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let dump = rlstorage(dir.path(), &["config"]);
    assert_eq!(dump.status.code(), Some(0));
    fs::write(dir.path().join("all.conf"), &dump.stdout).unwrap();
    let again = rlstorage(dir.path(), &["--config", "all.conf", "config"]);
    assert_eq!(again.stdout, dump.stdout);
}

#[test]
fn ablate_reports_all_variants() {
    let dir = tempfile::tempdir().unwrap();
    small_config(dir.path());
    let out = rlstorage(dir.path(), &["--config", "small.conf", "--seed", "1", "--out", "o", "ablate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    for v in ["full", "feedback-off", "collector-off", "both-off"] {
        assert!(text.contains(v), "{v} missing");
    }
}
