//! End-to-end checks of the `lss` binary: exit codes, file handling, CSV
//! shape, and the reproduce-from-echoed-config loop.

use std::path::Path;
use std::process::{Command, Output};

fn lss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "expected exit {code}\nstdout: {}\nstderr: {}",
        stdout(out),
        stderr(out)
    );
}

/// Drops the updates-per-second column, the one field that legitimately
/// changes between runs.
fn accuracy_columns(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .map(|line| {
            line.split(',')
                .enumerate()
                .filter(|(i, _)| *i != 16)
                .map(|(_, v)| v.to_string())
                .collect()
        })
        .collect()
}

#[test]
fn gen_writes_the_requested_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("z.trace");
    let out = lss(&[
        "gen", "--alpha", "1.3", "--n", "1000", "--len", "20000", "--seed", "7", "--out",
        trace.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    assert!(stderr(&out).contains("# effective configuration"));
    let text = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(text.lines().count(), 20_000);
    assert!(text.lines().all(|l| l.trim().parse::<u64>().is_ok()));
}

#[test]
fn gen_alpha_zero_is_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("u.trace");
    let out = lss(&[
        "gen", "--alpha", "0", "--n", "50", "--len", "5000", "--seed", "3", "--out",
        trace.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut counts = std::collections::HashMap::new();
    for line in text.lines() {
        *counts.entry(line.to_string()).or_insert(0u64) += 1;
    }
    assert_eq!(counts.len(), 50);
    let max = counts.values().max().unwrap();
    let min = counts.values().min().unwrap();
    assert!(max - min < 80, "uniform trace too lopsided: min {min}, max {max}");
}

#[test]
fn gen_requires_len() {
    let out = lss(&["gen", "--alpha", "1.0", "--n", "100"]);
    assert_exit(&out, 2);
}

#[test]
fn run_emits_one_csv_row() {
    let out = lss(&[
        "run", "--variant", "lss", "--memory-bits", "16384", "--len", "20000",
        "--window", "5000", "--seed", "5",
    ]);
    assert_exit(&out, 0);
    let body = stdout(&out);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 2, "expected header + one row:\n{body}");
    assert!(lines[0].starts_with("variant,axis,axis_value,memory_bits"));
    assert!(lines[1].starts_with("lss,none,,16384,"));
    assert_eq!(lines[1].split(',').count(), lines[0].split(',').count());
}

#[test]
fn run_rejects_lfs_with_wide_threshold() {
    let out = lss(&["run", "--variant", "lss_lfs", "--t", "4"]);
    assert_exit(&out, 2);
    assert!(stderr(&out).contains("lss_lfs requires t=1"));
}

#[test]
fn run_names_unknown_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "variant = ss\nwibble = 3\n").unwrap();
    let out = lss(&["run", "--config", cfg.to_str().unwrap()]);
    assert_exit(&out, 2);
    assert!(stderr(&out).contains("wibble"));
}

#[test]
fn missing_config_file_is_an_io_error() {
    let out = lss(&["run", "--config", "/definitely/not/here.conf"]);
    assert_exit(&out, 4);
}

#[test]
fn echoed_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let first = lss(&[
        "run", "--variant", "lss_lf", "--memory-bits", "32768", "--len", "20000",
        "--window", "5000", "--p", "0.8", "--seed", "11",
    ]);
    assert_exit(&first, 0);

    let echoed: String = stderr(&first)
        .lines()
        .skip_while(|l| !l.starts_with("# effective configuration"))
        .skip(1)
        .take_while(|l| l.contains('='))
        .collect::<Vec<_>>()
        .join("\n");
    assert!(echoed.contains("variant = lss_lf"), "echo missing:\n{echoed}");
    let cfg = dir.path().join("echo.conf");
    std::fs::write(&cfg, echoed).unwrap();

    let second = lss(&["run", "--config", cfg.to_str().unwrap()]);
    assert_exit(&second, 0);
    assert_eq!(
        accuracy_columns(&stdout(&first)),
        accuracy_columns(&stdout(&second)),
        "rerun from the echoed configuration changed accuracy output"
    );
}

#[test]
fn run_with_trace_file_round_trips(){
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.trace");
    let gen = lss(&[
        "gen", "--alpha", "1.1", "--n", "500", "--len", "10000", "--seed", "2", "--out",
        trace.to_str().unwrap(),
    ]);
    assert_exit(&gen, 0);
    let out = lss(&[
        "run", "--variant", "ss", "--trace", trace.to_str().unwrap(), "--window", "2500",
    ]);
    assert_exit(&out, 0);
    assert!(stdout(&out).lines().count() == 2);

    let conflict = lss(&[
        "run", "--trace", trace.to_str().unwrap(), "--alpha", "1.3",
    ]);
    assert_exit(&conflict, 2);
}

#[test]
fn sweep_produces_the_full_grid() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let out = lss(&[
        "sweep", "--axis", "p", "--values", "0.5,0.9", "--variants", "ss,lss_lf",
        "--len", "20000", "--window", "5000", "--out", csv_path.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 5, "header + 2x2 grid:\n{csv}");
    // Values drive the outer loop, variants the inner one.
    let firsts: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(firsts, ["ss", "lss_lf", "ss", "lss_lf"]);
    assert!(stderr(&out).contains("p=0.5 variant=ss"));
}

#[test]
fn sweep_rejects_bad_axes_and_values() {
    let out = lss(&["sweep", "--axis", "sideways", "--values", "1,2"]);
    assert_exit(&out, 2);

    let out = lss(&["sweep", "--axis", "memory", "--values", "1.5"]);
    assert_exit(&out, 2);
}

#[test]
fn selftest_exit_codes_and_determinism() {
    let clean = lss(&["selftest", "--seed", "42"]);
    assert_exit(&clean, 0);
    assert!(stdout(&clean).contains("[PASS]"));

    let again = lss(&["selftest", "--seed", "42"]);
    assert_eq!(stdout(&clean), stdout(&again), "selftest report not reproducible");

    let faulty = lss(&["selftest", "--seed", "42", "--fault", "skip-correction"]);
    assert_exit(&faulty, 3);
    assert!(stdout(&faulty).contains("[FAIL]"));
}

#[test]
fn output_lands_in_requested_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("row.csv");
    let out = lss(&[
        "run", "--len", "10000", "--window", "2500", "--out",
        path.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    assert!(Path::new(&path).exists());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("variant,"));
    assert_eq!(csv.lines().count(), 2);
}
