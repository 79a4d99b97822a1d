use std::process::Command;

use specsub::run_args;

fn run(args: &[&str]) -> specsub::Outcome {
    let mut full = vec!["specsub"];
    full.extend_from_slice(args);
    run_args(full)
}

fn csv_field(csv: &str, row: usize, column: &str) -> String {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == column).unwrap();
    lines.nth(row).unwrap().split(',').nth(idx).unwrap().to_string()
}

#[test]
fn lambda0_of_example3_is_zero() {
    let out = run(&["lambda0", "paper_example3", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(csv_field(&out.stdout, 0, "lambda0"), "0");
    assert_eq!(csv_field(&out.stdout, 0, "method"), "unimodular_amenable_zero");
    assert_eq!(csv_field(&out.stdout, 0, "unimodular"), "true");
}

#[test]
fn lambda0_of_affine_group() {
    let out = run(&["lambda0", "affine2", "--c", "1", "--format", "csv"]);
    assert_eq!(out.code, 0);
    assert_eq!(csv_field(&out.stdout, 0, "lambda0").parse::<f64>().unwrap(), 0.25);
    let out = run(&["lambda0", "affine2:4", "--format", "csv"]);
    assert!((csv_field(&out.stdout, 0, "lambda0").parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn verify_warped_const_has_zero_slack() {
    let out = run(&["verify-warped", "const", "--grid", "256", "--format", "csv", "--samples", "20"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let slack: f64 = csv_field(&out.stdout, 1, "slack").parse().unwrap();
    assert_eq!(csv_field(&out.stdout, 1, "mode"), "0");
    assert!(slack.abs() < 1e-10);
}

#[test]
fn csv_header_is_versioned() {
    let out = run(&["cheeger", "so3", "--format", "csv"]);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("# specsub lie v1"));
    assert_eq!(lines.next(), Some("fixture,unimodular,amenable,lambda0,cheeger,method"));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify-warped", "sinshift", "--grid", "64", "--format", "csv", "--seed", "11", "--samples", "30"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let t1 = run(&["tail-ess", "exp-ray", "--grid", "256", "--format", "csv"]);
    let t2 = run(&["tail-ess", "exp-ray", "--grid", "256", "--format", "csv"]);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn grid_must_be_power_of_two() {
    for g in ["100", "8"] {
        let out = run(&["verify-warped", "const", "--grid", g]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("power of two"));
    }
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["lambda0"]).code, 1);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("fixture,grid_n,mode,lambda0,residual,slack"));
}

#[test]
fn unknown_fixture_and_preset() {
    assert_eq!(run(&["lambda0", "e8"]).code, 1);
    assert_eq!(run(&["lambda0", "so3", "--tol-preset", "loose"]).code, 1);
    assert_eq!(run(&["lambda0", "so3", "--tol-preset", "strict"]).code, 0);
}

#[test]
fn wrong_fixture_kind_is_rejected() {
    assert_eq!(run(&["lambda0", "exp"]).code, 1);
    assert_eq!(run(&["tail-ess", "so3"]).code, 1);
}

#[test]
fn parse_errors_report_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.lie");
    std::fs::write(&path, "dim 3\nbracket 1 2 3 1\nbracket 2 1 3 1\n").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
}

#[test]
fn file_fixtures_and_override_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("so3.lie"), "dim 2\nbracket 1 2 2 1\nmetric 1 1 0.25\n").unwrap();
    let over = run(&["lambda0", "so3", "--format", "csv", "--fixture-dir", dir.path().to_str().unwrap()]);
    assert_eq!(over.code, 0, "{}", over.stderr);
    // affine algebra with g(X, X) = 1/4: c = 4, lambda0 = 1.
    assert!((csv_field(&over.stdout, 0, "lambda0").parse::<f64>().unwrap() - 1.0).abs() < 1e-12);

    let warp = dir.path().join("w.warp");
    std::fs::write(&warp, "base interval 0 1 dirichlet\nwarp const 1\n").unwrap();
    let out = run(&["verify-warped", warp.to_str().unwrap(), "--grid", "64", "--samples", "0", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let l: f64 = csv_field(&out.stdout, 0, "lambda0").parse().unwrap();
    assert!((l - std::f64::consts::PI.powi(2)).abs() < 0.01);
}

#[test]
fn quotient_with_explicit_ideal() {
    let out = run(&["quotient", "affine2", "--ideal", "0,1", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    // The ideal field is quoted; read from the right.
    let row: Vec<&str> = out.stdout.lines().nth(2).unwrap().rsplit(',').collect();
    assert!(out.stdout.contains("affine2,\"0,1\",1,"));
    assert_eq!(row[0], "true");
    let bound: f64 = row[1].parse().unwrap();
    assert!((bound - 0.25).abs() < 1e-12);
    // Not an ideal: span{X}.
    assert_eq!(run(&["quotient", "affine2", "--ideal", "1,0"]).code, 1);
    assert_eq!(run(&["quotient", "affine2", "--ideal", "1,0,0"]).code, 1);
}

#[test]
fn solver_failure_exits_two() {
    let spec = specsub_core::fixtures::warp_fixture("exp-ray", None).unwrap().spec;
    let op = specsub_core::warped::build_schrodinger(&spec, 1024).unwrap();
    let tols = specsub_core::Tolerances { max_iters: 2, ..Default::default() };
    let err = specsub_core::warped::lowest_eigenvalue(&op, &tols).unwrap_err();
    assert_eq!(specsub::exit_code(&err), 2);
}

#[test]
fn inapplicable_formula_exit_code() {
    let alg = specsub_core::fixtures::lie_fixture("sl2", None).unwrap().algebra;
    let err = specsub_core::group::lambda0_amenable(&alg, &Default::default()).unwrap_err();
    assert_eq!(specsub::exit_code(&err), 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = run(&["lambda0", "heisenberg3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("heisenberg3,true,true,0,0,unimodular_amenable_zero"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_specsub");
    let ok = Command::new(bin).args(["lambda0", "affine2"]).env_remove("SPECSUB_FIXTURE_DIR").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "affine2: lambda0 = 0.25, method = amenable_formula\n");
    let bad = Command::new(bin).args(["lambda0", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
