//! End-to-end tests of the `dcscreen` binary: flag handling, config files,
//! report files, and exit codes (0 success, 1 data error, 2 usage error).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use dcscreen::Dataset;

fn dcscreen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcscreen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_signal_csv(path: &Path, n: usize, p: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = Array2::from_shape_fn((n, p), |_| rng.sample::<f64, _>(StandardNormal));
    let mut y = Array2::zeros((n, 1));
    for i in 0..n {
        y[[i, 0]] = x[[i, 0]] + 0.1 * rng.sample::<f64, _>(StandardNormal);
    }
    Dataset::new(x, y, None).unwrap().write_csv(path).unwrap();
}

#[test]
fn screen_ranks_a_copied_response_first() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("toy.csv");
    // Six predictors, the first an exact copy of the response.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 40;
    let y = Array2::from_shape_fn((n, 1), |_| rng.sample::<f64, _>(StandardNormal));
    let mut x = Array2::from_shape_fn((n, 6), |_| rng.sample::<f64, _>(StandardNormal));
    x.column_mut(0).assign(&y.column(0));
    Dataset::new(x, y, None).unwrap().write_csv(&input).unwrap();

    let out = dcscreen(&[
        "screen",
        "--input",
        input.to_str().unwrap(),
        "--response-cols",
        "7",
        "--d",
        "2",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let utilities = fs::read_to_string(dir.path().join("utilities.csv")).unwrap();
    let first_row = utilities.lines().nth(1).unwrap();
    let fields: Vec<&str> = first_row.split(',').collect();
    assert_eq!(fields[0], "1");
    let omega: f64 = fields[2].parse().unwrap();
    let rank: usize = fields[3].parse().unwrap();
    assert!((omega - 1.0).abs() < 1e-10, "utility {omega}");
    assert_eq!(rank, 1);

    let selected: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("selected.json")).unwrap())
            .unwrap();
    assert_eq!(selected["selected"][0], 1);
    assert_eq!(selected["n"], 40);
    assert_eq!(selected["num_blocks"], 6);
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn screen_auto_cutoff_records_n_over_log_n() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write_signal_csv(&input, 200, 40, 7);

    let out = dcscreen(&[
        "screen",
        "--input",
        input.to_str().unwrap(),
        "--response-cols",
        "41",
        "--rule",
        "top-d",
        "--d",
        "auto",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let selected: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("selected.json")).unwrap())
            .unwrap();
    assert_eq!(selected["rule"]["type"], "top-d");
    assert_eq!(selected["rule"]["d"], 37);
    assert_eq!(selected["selected"].as_array().unwrap().len(), 37);
}

#[test]
fn screen_grouped_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write_signal_csv(&input, 50, 6, 9);

    let out = dcscreen(&[
        "screen",
        "--input",
        input.to_str().unwrap(),
        "--response-cols",
        "7",
        "--groups",
        "1-3;4;5-6",
        "--d",
        "1",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let utilities = fs::read_to_string(dir.path().join("utilities.csv")).unwrap();
    assert_eq!(utilities.lines().count(), 4, "3 blocks + header:\n{utilities}");
}

#[test]
fn sis_on_multivariate_response_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write_signal_csv(&input, 30, 5, 11);

    let out = dcscreen(&[
        "screen",
        "--input",
        input.to_str().unwrap(),
        "--response-cols",
        "5-6",
        "--method",
        "sis",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("univariate"), "stderr: {stderr}");
}

#[test]
fn missing_input_file_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcscreen(&[
        "screen",
        "--input",
        "/nonexistent/input.csv",
        "--response-cols",
        "1",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_preset_lists_valid_names_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcscreen(&[
        "simulate",
        "--preset",
        "bogus",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("1a-case1-desk"), "stderr: {stderr}");
    assert!(stderr.contains("3b-case4"), "stderr: {stderr}");
}

#[test]
fn simulate_writes_reports_and_is_rerun_stable() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = dcscreen(&[
            "simulate",
            "--preset",
            "1a-case1-desk",
            "--reps",
            "3",
            "--seed",
            "5",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    }
    for file in ["eval_report.json", "eval_report.csv", "manifest.json"] {
        let a = fs::read(dir_a.path().join(file)).unwrap();
        let b = fs::read(dir_b.path().join(file)).unwrap();
        assert_eq!(a, b, "{file} not byte-identical across reruns");
    }
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir_a.path().join("eval_report.json")).unwrap())
            .unwrap();
    assert_eq!(json["preset"], "1a-case1-desk");
    assert_eq!(json["report"]["replications"], 3);
    assert_eq!(json["report"]["cutoffs"][0], 37);
}

#[test]
fn config_file_wins_over_flags_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    fs::write(&config, "reps=4\nseed=9\n").unwrap();
    let out = dcscreen(&[
        "simulate",
        "--preset",
        "1a-case1-desk",
        "--reps",
        "2",
        "--config",
        config.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("overrides --reps"), "stderr: {stderr}");
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["config"]["reps"], "4");
    assert_eq!(manifest["seed"], 9);
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    fs::write(&config, "repz=4\n").unwrap();
    let out = dcscreen(&[
        "simulate",
        "--preset",
        "1a-case1-desk",
        "--config",
        config.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn converge_rejects_single_point_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcscreen(&[
        "converge",
        "--preset",
        "1a",
        "--grid",
        "100",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid"));
}

#[test]
fn converge_writes_decay_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dcscreen(&[
        "converge",
        "--preset",
        "noise",
        "--p",
        "10",
        "--grid",
        "40,160",
        "--seeds",
        "3",
        "--surrogate-n",
        "1500",
        "--seed",
        "3",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let table = fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "n,median_max_err,mean_max_err");
    assert!(lines[1].starts_with("40,"));
    assert!(lines[2].starts_with("160,"));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("convergence.json")).unwrap())
            .unwrap();
    assert_eq!(json["surrogate_n"], 1500);
    assert_eq!(json["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let out = dcscreen(&["screen", "--response-cols", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn preset_list_subcommand_prints_names() {
    let out = dcscreen(&["simulate", "--preset", "list"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().count() >= 42);
    assert!(stdout.contains("2-case1-desk"));
}
