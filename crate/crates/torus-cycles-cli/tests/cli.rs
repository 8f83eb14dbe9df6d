//! Black-box tests of the binary: documented exit codes, reproducible
//! output, and CSV/SVG contracts.

use std::process::{Command, Output};

use torus_cycles_cli::csv;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-cycles"))
        .args(args)
        .env_remove("TORUS_CYCLES_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn triangle_probability_row() {
    let out = run(&["cycle-prob", "--model", "gr", "--sigma", "inf", "--d", "1", "--r", "0.1", "--q", "3"]);
    assert!(out.status.success());
    let table = csv::parse(&stdout(&out)).unwrap();
    let value_col = table.header.iter().position(|h| h == "value").unwrap();
    let value: f64 = table.rows[0][value_col].parse().unwrap();
    assert!((value - 0.03).abs() < 1e-10, "value {value}");
}

#[test]
fn oversized_radius_is_a_usage_error() {
    let out = run(&["cycle-prob", "--model", "gr", "--sigma", "inf", "--d", "1", "--r", "0.6", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("r must lie in (0, 0.5]"), "stderr: {err}");
}

#[test]
fn lattice_count_rows() {
    let out = run(&["psi", "--d", "2", "--k-max", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "k,psi\n0,1\n1,4\n");
}

#[test]
fn unconverged_series_without_fallback_is_exit_3() {
    let out = run(&[
        "cycle-prob", "--model", "gr", "--sigma", "2", "--d", "2", "--r", "0.05", "--q", "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mc_fallback_rescues_the_unconverged_series() {
    let out = run(&[
        "cycle-prob", "--model", "gr", "--sigma", "2", "--d", "2", "--r", "0.05", "--q", "3",
        "--mc-fallback", "--samples", "50000", "--seed", "1",
    ]);
    assert!(out.status.success());
    let table = csv::parse(&stdout(&out)).unwrap();
    let method_col = table.header.iter().position(|h| h == "method").unwrap();
    assert_eq!(table.rows[0][method_col], "mc");
}

#[test]
fn missing_threshold_is_exit_3() {
    let out = run(&["threshold", "--quantity", "hamilton", "--d", "2", "--sigma", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("no threshold"));
}

#[test]
fn capacity_overflow_is_exit_4() {
    let out = run(&["mc", "--model", "er", "--p", "0.5", "--n", "30", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn unknown_subcommand_is_exit_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_argv_and_seed_reproduce_bytes() {
    let args = [
        "mc", "--model", "gr", "--d", "2", "--sigma", "inf", "--r", "0.2", "--q", "3",
        "--samples", "100000", "--seed", "99",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = run(&[
        "mc", "--model", "gr", "--d", "2", "--sigma", "inf", "--r", "0.2", "--q", "3",
        "--samples", "100000", "--seed", "100",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn seed_env_var_is_the_fallback() {
    let args = [
        "mc", "--model", "gr", "--d", "1", "--sigma", "inf", "--r", "0.1", "--q", "3",
        "--samples", "50000",
    ];
    let via_env = Command::new(env!("CARGO_BIN_EXE_torus-cycles"))
        .args(args)
        .env("TORUS_CYCLES_SEED", "55")
        .output()
        .unwrap();
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "55"]);
    let via_flag = run(&with_flag);
    assert_eq!(via_env.stdout, via_flag.stdout);
}

#[test]
fn csv_round_trips_through_the_reader() {
    let out = run(&["spectral", "--model", "er", "--p", "0.5", "--n", "8", "--kind", "gamma"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let table = csv::parse(&text).unwrap();
    assert_eq!(table.emit(), text);
    assert_eq!(table.rows.len(), 9);
    // reparsed floats are identical values, not approximations
    for row in &table.rows {
        let v: f64 = row[1].parse().unwrap();
        assert_eq!(csv::fmt_f64(v), row[1]);
    }
}

#[test]
fn hamilton_threshold_figure_files() {
    let dir = tempfile::tempdir().unwrap();
    let svg_path = dir.path().join("fig1.svg");
    let csv_path = dir.path().join("fig1.csv");
    let out = run(&[
        "threshold", "--quantity", "hamilton", "--d", "2", "--sigma", "2",
        "--n-start", "5", "--n-stop", "9",
        "--plot", svg_path.to_str().unwrap(),
        "--out", csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("ER") && svg.contains("GR d=2"));
    let table = csv::parse(&std::fs::read_to_string(&csv_path).unwrap()).unwrap();
    assert_eq!(table.header, vec!["n", "threshold_er", "threshold_gr"]);
    for row in &table.rows {
        let er: f64 = row[1].parse().unwrap();
        let gr: f64 = row[2].parse().unwrap();
        assert!(gr < er, "geometric threshold should sit below ER");
    }
}

#[test]
fn determinant_sweep_carries_comparison_bounds() {
    let out = run(&[
        "spectral", "--model", "er", "--n", "6", "--kind", "lambda",
        "--p-start", "0.1", "--p-stop", "0.9", "--p-points", "5",
    ]);
    assert!(out.status.success());
    let table = csv::parse(&stdout(&out)).unwrap();
    assert_eq!(
        table.header,
        vec!["p", "expected_det", "faddeev_bound", "fallat_bound"]
    );
    // (n+1)^{(n+1)/2} / 2^n and (n-3) 3^{n/4 - 1} at n = 6
    let faddeev: f64 = table.rows[0][2].parse().unwrap();
    assert!((faddeev - 7f64.powf(3.5) / 64.0).abs() < 1e-9);
    assert_eq!(table.rows[0][3], "3");
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--seed", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("selftest passed"));
}
