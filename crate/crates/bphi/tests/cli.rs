//! End-to-end tests of the installed binary: exit codes, output formats,
//! and byte-level determinism.

use std::process::{Command, Output};

fn bphi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bphi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn bphi_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bphi"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

#[test]
fn no_arguments_is_usage_error() {
    let out = bphi(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_command_is_usage_error() {
    let out = bphi(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown command"));
}

#[test]
fn norm_reports_both_norms() {
    let out = bphi(&["norm", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("p,g,arg_lambda,lower_zero_limit,lower_inf_limit,q"));
    // Q(1/2) = sqrt(1/8) at full serialized precision.
    assert!(stdout.contains("3.5355339059327379e-1"), "output: {stdout}");
}

#[test]
fn norm_out_of_range_exits_two_naming_the_range() {
    let out = bphi(&["norm", "--p", "1.2"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("between 0 and 1"), "stderr: {stderr}");
}

#[test]
fn gfun_emits_expected_row_count_and_symmetry() {
    let out = bphi(&["gfun", "--grid", "0.01:0.99:0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let data_rows: Vec<&str> = stdout
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('r'))
        .collect();
    assert_eq!(data_rows.len(), 99, "output: {stdout}");
    // g column is symmetric about 0.5: first and last rows carry the same g.
    let first_g = data_rows[0].split(',').nth(1).unwrap();
    let last_g = data_rows[98].split(',').nth(1).unwrap();
    assert_eq!(first_g, last_g);
}

#[test]
fn gfun_single_point_and_empty_grid() {
    let out = bphi(&["gfun", "--grid", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let data_rows: Vec<&str> = stdout
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('r'))
        .collect();
    assert_eq!(data_rows.len(), 1);

    let out = bphi(&["gfun", "--grid", "0.9:0.1:0.05"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fenchel_square_conjugate() {
    let out = bphi(&["fenchel", "--f", "square", "--u", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("1.0000000000000000e0"), "output: {stdout}");
}

#[test]
fn bound_happy_path_and_rejections() {
    let out = bphi(&["bound", "--w", "pow:0.75", "--u", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    // v_w(2) = 27/16 at full precision, plus the A1-A5 check lines.
    assert!(stdout.contains("1.6875000000000000e0"), "output: {stdout}");
    for cond in ["A1", "A2", "A3", "A4", "A5"] {
        assert!(
            stdout.contains(&format!("# check {cond} passed=true")),
            "missing {cond}: {stdout}"
        );
    }

    let out = bphi(&["bound", "--w", "pow:0.40", "--u", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("A3"));

    let out = bphi(&["bound", "--w", "pow:0.75", "--u", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_byte_identical_across_runs_and_workers() {
    let args = [
        "simulate",
        "--p",
        "0.5",
        "--n",
        "4",
        "--w",
        "pow:0.75",
        "--u",
        "0.35",
        "--samples",
        "50000",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a = bphi_env(&args, "BPHI_WORKERS", "1");
    let b = bphi_env(&args, "BPHI_WORKERS", "4");
    let c = bphi(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "worker count changed the bytes");
    assert_eq!(a.stdout, c.stdout, "rerun changed the bytes");
    let stdout = String::from_utf8(a.stdout).unwrap();
    assert!(stdout.contains("\"ci-contains-exact\""), "output: {stdout}");
}

#[test]
fn simulate_writes_identical_files() {
    // Identical resolved config (the out path included, since it is echoed
    // into the header) twice over: the file bytes must match exactly.
    let path = std::env::temp_dir().join("bphi_sim_rerun.csv");
    let args = vec![
        "simulate".to_string(),
        "--p-list".into(),
        "0.2,0.5,0.7".into(),
        "--w-value".into(),
        "1.5".into(),
        "--u".into(),
        "0.4".into(),
        "--samples".into(),
        "20000".into(),
        "--seed".into(),
        "99".into(),
        "--out".into(),
        path.to_str().unwrap().to_string(),
    ];
    let run = || {
        let status = Command::new(env!("CARGO_BIN_EXE_bphi"))
            .args(&args)
            .status()
            .expect("binary runs");
        assert!(status.success());
        std::fs::read(&path).expect("output file written")
    };
    let bytes1 = run();
    let bytes2 = run();
    assert_eq!(bytes1, bytes2);
    let _ = std::fs::remove_file(path);
}

#[test]
fn audit_reports_the_counterexample() {
    let out = bphi(&["audit"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("quadrant-restricted-claim passed=true"),
        "output: {stdout}"
    );
    assert!(stdout.contains("envelope-exceeded"), "output: {stdout}");
    // The r = 0.1, lambda = 20 flag from the default grids.
    assert!(
        stdout.contains("r=1.0000000000000001e-1 lambda=2.0000000000000000e1"),
        "output: {stdout}"
    );
}

#[test]
fn verify_binary_suite_passes() {
    let out = bphi(&["verify", "--suite", "binary"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("# check g-symmetry passed=true"));
    assert!(stdout.contains("# check quadrant-inequality passed=true"));
    assert!(stdout.contains("# check q-cross-check passed=true"));
}

#[test]
fn verify_all_suites_exit_zero() {
    let out = bphi(&["verify", "--suite", "all"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(!stdout.contains("passed=false"), "output: {stdout}");
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = bphi(&["verify", "--suite", "everything"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_documents_carry_the_three_keys() {
    let out = bphi(&["norm", "--p", "0.25", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    for key in [
        "\"config\"",
        "\"results\"",
        "\"checks\"",
        "\"version\"",
        "\"constants\"",
    ] {
        assert!(stdout.contains(key), "missing {key}: {stdout}");
    }
}
