//! End-to-end runs of the `glspace` binary: exit codes, file outputs and
//! flag/config-file precedence.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_glspace"))
}

fn read_csv(path: &std::path::Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn norms_command_emits_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["norms", "--profile", "sqrt-log", "--p-grid", "lin:1:4:4", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());

    let rows = read_csv(&dir.path().join("norms.csv"));
    assert_eq!(rows[0], vec!["norm", "parameter", "value", "abs_error", "location"]);
    // Row at p = 2: |√|log x||_2 = Γ(2)^(1/2) = 1.
    let p2 = rows.iter().find(|r| r[0] == "lp" && r[1] == "2").unwrap();
    let v: f64 = p2[2].parse().unwrap();
    assert!((v - 1.0).abs() < 1e-8, "lp(2) = {v}");

    // Degenerate Grand Lebesgue row at r = 4 equals the lp row at p = 4.
    let lp4: f64 = rows.iter().find(|r| r[0] == "lp" && r[1] == "4").unwrap()[2].parse().unwrap();
    let gls4: f64 =
        rows.iter().find(|r| r[0] == "gls-degenerate" && r[1] == "4").unwrap()[2].parse().unwrap();
    assert!((lp4 - gls4).abs() <= 1e-9 * lp4);

    // The Lorentz norm of the unbounded profile under v(t) = t diverges.
    let lorentz = rows.iter().find(|r| r[0] == "lorentz").unwrap();
    assert_eq!(lorentz[2], "divergent");
}

#[test]
fn constant_profile_norm_rows_are_all_one() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["norms", "--profile", "constant:1", "--p-grid", "lin:1:4:4", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    for row in read_csv(&dir.path().join("norms.csv")).iter().skip(1).filter(|r| r[0] == "lp") {
        let v: f64 = row[2].parse().unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{row:?}");
    }
}

#[test]
fn validation_failures_exit_one_with_all_problems() {
    let out = bin()
        .args(["counterexample", "--beta", "0", "--profile", "mystery", "--nmax", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("beta"), "stderr: {msg}");
    assert!(msg.contains("profile") || msg.contains("mystery"), "stderr: {msg}");
    assert!(msg.contains("nmax"), "stderr: {msg}");
}

#[test]
fn counterexample_passes_at_modest_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["counterexample", "--nmax", "2000", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    for file in ["blocks.csv", "asymptotics.csv", "divergence.csv", "continuity.csv", "report.txt"] {
        assert!(dir.path().join(file).exists(), "{file} missing");
    }
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert_eq!(report.matches(": PASS").count(), 4, "report:\n{report}");
}

#[test]
fn counterexample_stays_certified_at_tiny_truncation() {
    // Even nmax = 10 passes: the certified series carry integral-test tail
    // brackets, so truncation does not silently weaken the checks.
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["counterexample", "--nmax", "10", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn lorentz_scan_exhaustion_exits_three() {
    // A constant profile past the lorentz level sweep's range makes the
    // norms command report numerical non-convergence rather than a table.
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["norms", "--profile", "constant:2e12", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-convergence"));
}

#[test]
fn degenerate_width_underflow_exits_one() {
    // β = 100 underflows every block width past n = 1; the spec build must
    // reject the degenerate supports at validation time.
    let out = bin().args(["counterexample", "--beta", "100", "--nmax", "100"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn embedding_verdicts_match_the_construction() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args([
            "embedding",
            "--mode",
            "gls",
            "--lhs",
            "power-singular:0.125:4",
            "--rhs",
            "power-singular:0:4",
            "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("verdict: weaker"), "{report}");

    // Identical specs: not weaker.
    let status = bin()
        .args([
            "embedding",
            "--mode",
            "gls",
            "--lhs",
            "power-singular:0.125:4",
            "--rhs",
            "power-singular:0.125:4",
            "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("verdict: not-weaker"), "{report}");

    // Orlicz mode: exp(u) - 1 is significantly weaker than exp(u²/2) - 1.
    let status = bin()
        .args([
            "embedding", "--mode", "orlicz", "--lhs", "exp-linear", "--rhs", "exp-square", "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("verdict: weaker"), "{report}");

    let out = bin()
        .args(["embedding", "--mode", "gls", "--lhs", "exotic:1", "--rhs", "degenerate:4", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_file_is_used_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "profile = \"constant:2\"\np_grid = \"lin:1:2:2\"\n").unwrap();

    // Config alone: constant 2 → lp rows at 2.
    let out_a = dir.path().join("a");
    let status = bin()
        .args(["norms", "--config"])
        .arg(&config)
        .args(["--out"])
        .arg(&out_a)
        .status()
        .unwrap();
    assert!(status.success());
    let rows = read_csv(&out_a.join("norms.csv"));
    let v: f64 = rows.iter().find(|r| r[0] == "lp").unwrap()[2].parse().unwrap();
    assert!((v - 2.0).abs() < 1e-10);

    // Flag overrides the file's profile.
    let out_b = dir.path().join("b");
    let status = bin()
        .args(["norms", "--config"])
        .arg(&config)
        .args(["--profile", "constant:3", "--out"])
        .arg(&out_b)
        .status()
        .unwrap();
    assert!(status.success());
    let rows = read_csv(&out_b.join("norms.csv"));
    let v: f64 = rows.iter().find(|r| r[0] == "lp").unwrap()[2].parse().unwrap();
    assert!((v - 3.0).abs() < 1e-10);
}

#[test]
fn montecarlo_with_fixed_seed_reproduces_files_and_reports_exact_overlays() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &std::path::Path| {
        let status = bin()
            .args(["montecarlo", "--nmax", "2000", "--count", "20000", "--seed", "7", "--out"])
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run(&a);
    run(&b);
    for file in ["tail.csv", "moments.csv", "borel_cantelli.csv", "union_bound.csv", "report.txt"] {
        assert_eq!(
            std::fs::read(a.join(file)).unwrap(),
            std::fs::read(b.join(file)).unwrap(),
            "{file} differs"
        );
    }
    // The tail row at u = 1.5 carries the exact residual-mass overlay.
    let rows = read_csv(&a.join("tail.csv"));
    let row = rows.iter().find(|r| r[0] == "1.5").unwrap();
    let exact: f64 = row[3].parse().unwrap();
    assert!((exact - 0.03561265957073754).abs() < 1e-6, "exact overlay {exact}");
}
