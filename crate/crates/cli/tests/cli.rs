//! End-to-end tests against the built binary: golden files pin the three
//! reference computations, plus stdin plumbing, the precision flag, and
//! the error paths.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/configs")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {}", path.display(), e))
}

fn qcli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = qcli(args);
    assert!(
        out.status.success(),
        "expected success for {:?}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

/// Runs an expected-failure invocation and returns stderr.
fn run_err(args: &[&str]) -> String {
    let out = qcli(args);
    assert_eq!(
        out.status.code(),
        Some(1),
        "expected exit 1 for {:?}\nstdout: {}",
        args,
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(out.stdout.is_empty(), "failed commands must not print results");
    String::from_utf8(out.stderr).expect("utf8 stderr")
}

#[test]
fn center_of_the_shared_free_generator_config_matches_golden() {
    let cfg = fixture("free_gamma.json");
    let out = run_ok(&["center", "--config", cfg.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.trim_end(), golden("center_free_gamma.json").trim_end());
}

#[test]
fn cube_root_binomial_and_goldie_bound_match_golden() {
    let cfg = fixture("root3.json");
    let cfg = cfg.to_str().unwrap();
    let out = run_ok(&["pow", "x1 + x2", "3", "--config", cfg]);
    assert_eq!(out.trim_end(), golden("pow_root3.txt").trim_end());
    let out = run_ok(&["goldie", "--config", cfg, "--output", "json"]);
    assert_eq!(out.trim_end(), golden("goldie_root3.json").trim_end());
}

#[test]
fn generic_spectrum_report_matches_golden() {
    let cfg = fixture("generic3.json");
    let out = run_ok(&["spectrum", "--config", cfg.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.trim_end(), golden("spectrum_generic3.json").trim_end());
    let report: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(report["h_primes"].as_array().unwrap().len(), 8);
    assert_eq!(report["ufd_verdict"], "UFD");
    assert_eq!(report["height_one"], serde_json::json!([1, 2, 3]));
}

#[test]
fn hprimes_lists_all_four_ideals_for_two_variables() {
    let cfg = fixture("root3.json");
    let out = run_ok(&["hprimes", "--config", cfg.to_str().unwrap()]);
    let lines: Vec<&str> = out.trim_end().lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "J_{} = <0>");
    assert_eq!(lines[3], "J_{1,2} = <x1, x2>");
}

#[test]
fn chain_check_counts_to_the_top_ideal() {
    let cfg = fixture("generic3.json");
    let out = run_ok(&[
        "chain-check", "1", "2", "3",
        "--config", cfg.to_str().unwrap(),
        "--output", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["length"], 3);
}

#[test]
fn dot_export_draws_the_boolean_lattice() {
    let cfg = fixture("root3.json");
    let out = run_ok(&["dot", "--config", cfg.to_str().unwrap()]);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.matches("->").count(), 4);
    let spectrum_dot = run_ok(&[
        "spectrum", "--config", cfg.to_str().unwrap(), "--output", "dot",
    ]);
    assert_eq!(out, spectrum_dot);
}

#[test]
fn expressions_are_read_from_stdin_with_a_dash() {
    let cfg = fixture("root3.json");
    let mut child = Command::new(env!("CARGO_BIN_EXE_qcli"))
        .args(["mul", "-", "x1", "--config", cfg.to_str().unwrap()])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"x2 * x1")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    // x2 x1 x1 = zeta^-2 x1^2 x2 = zeta x1^2 x2 at a cube root of unity.
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim_end(),
        "zeta*x1^2*x2"
    );
}

#[test]
fn precision_flag_overrides_the_config() {
    let cfg = fixture("root3.json");
    let out = run_ok(&[
        "pow", "x1 + x2", "3",
        "--config", cfg.to_str().unwrap(),
        "--precision", "3",
    ]);
    // Degree-3 terms sit at the truncation boundary and vanish.
    assert_eq!(out.trim_end(), "0");
}

#[test]
fn inversion_round_trips_through_the_cli() {
    let cfg = fixture("root3.json");
    let cfg = cfg.to_str().unwrap();
    let inv = run_ok(&["inv", "1 - x1*x2", "--config", cfg]);
    let back = run_ok(&["mul", inv.trim_end(), "1 - x1*x2", "--config", cfg]);
    assert_eq!(back.trim_end(), "1");
}

#[test]
fn decompose_splits_across_the_coset_transversal() {
    let cfg = fixture("root3.json");
    let out = run_ok(&[
        "decompose", "1 + 2*x1^3 + x2^2",
        "--config", cfg.to_str().unwrap(),
        "--output", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 2);
    let comps = v["components"].as_array().unwrap();
    // x1^3 lands in the zero coset of S = 3Z x 3Z; x2^2 is its own coset.
    assert_eq!(comps[0]["representative"], serde_json::json!([0, 0]));
    assert_eq!(comps[0]["series"], "1 + 2*x1^3");
    assert_eq!(comps[1]["representative"], serde_json::json!([0, 2]));
}

#[test]
fn monomialize_reports_the_support() {
    let cfg = fixture("root3.json");
    let out = run_ok(&[
        "monomialize", "3*x1 + x1*x2 - 1/2*x2^2",
        "--config", cfg.to_str().unwrap(),
        "--output", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["monomials"], serde_json::json!(["x1", "x1*x2", "x2^2"]));
    assert_eq!(v["retries"], 0);
}

#[test]
fn config_errors_name_the_offending_pair() {
    let dir = std::env::temp_dir().join("qcli-test-configs");
    std::fs::create_dir_all(&dir).unwrap();
    let missing = dir.join("missing_pair.json");
    std::fs::write(
        &missing,
        r#"{"n":3,"m":1,"r":1,"q":[[{"torsion":0,"free":[0]}],[{"torsion":0,"free":[1]}]]}"#,
    )
    .unwrap();
    let err = run_err(&["center", "--config", missing.to_str().unwrap()]);
    assert!(err.starts_with("qcli center:"), "got: {}", err);
    assert!(err.contains("(1, 3)"), "got: {}", err);

    let zero_m = dir.join("zero_m.json");
    std::fs::write(&zero_m, r#"{"n":1,"m":0,"r":0,"q":[]}"#).unwrap();
    let err = run_err(&["center", "--config", zero_m.to_str().unwrap()]);
    assert!(err.contains("m must be at least 1"), "got: {}", err);
}

#[test]
fn expression_errors_carry_positions_and_the_subcommand_name() {
    let cfg = fixture("root3.json");
    let cfg = cfg.to_str().unwrap();
    let err = run_err(&["inv", "x1 + x9", "--config", cfg]);
    assert!(err.starts_with("qcli inv:"), "got: {}", err);
    assert!(err.contains("x9") && err.contains("position 6"), "got: {}", err);

    let err = run_err(&["pow", "(x1 + x2)^-1", "2", "--config", cfg]);
    assert!(err.contains("inv("), "got: {}", err);

    let err = run_err(&["normal-check", "inv(x1)", "--config", cfg]);
    assert!(err.contains("Laurent shift (1, 0)"), "got: {}", err);
}

#[test]
fn delegated_errors_surface_with_the_subcommand_name() {
    let cfg = fixture("root3.json");
    let cfg = cfg.to_str().unwrap();
    let err = run_err(&["chain-check", "1", "2", "--config", cfg]);
    assert!(err.starts_with("qcli chain-check:"), "got: {}", err);
    assert!(err.contains("generic"), "got: {}", err);

    let err = run_err(&["inv", "x1 + x2", "--config", cfg]);
    assert!(err.starts_with("qcli inv:"), "got: {}", err);

    let err = run_err(&["hprimes", "--config", cfg, "--output", "dot"]);
    assert!(
        err.contains("spectrum and dot subcommands"),
        "got: {}",
        err
    );
}
