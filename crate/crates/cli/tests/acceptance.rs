//! Acceptance suite: one test per advertised guarantee, each printing a
//! single pass/fail line (visible with `--nocapture`). The final test
//! drives the compiled binary twice and byte-compares everything it
//! writes.

use std::fs;
use std::process::Command;
use std::time::Instant;

use boxkernel::verify::{
    check_box_axioms, check_digraphon_identity, check_filter_bank, check_induced_squares,
    check_min_spectrum, check_representer_fit, check_route_equivalence, check_section_fourier,
    check_spectral_transfer, check_uncertainty_identity, CriterionResult,
};

const SEED: u64 = 0;

fn report(result: &CriterionResult) {
    println!(
        "{} — {} — {}",
        if result.pass { "PASS" } else { "FAIL" },
        result.name,
        result.detail
    );
    assert!(result.pass, "{}: {}", result.name, result.detail);
}

#[test]
fn acceptance_min_graphon_spectrum() {
    let start = Instant::now();
    let result = check_min_spectrum();
    let elapsed = start.elapsed();
    report(&result);
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "spectrum check took {elapsed:?}, budget is 10 s"
    );
}

#[test]
fn acceptance_induced_kernel_squares() {
    report(&check_induced_squares(SEED + 1));
}

#[test]
fn acceptance_filter_route_equivalence() {
    report(&check_route_equivalence(SEED + 2));
}

#[test]
fn acceptance_box_algebra_axioms() {
    report(&check_box_axioms(SEED + 3));
}

#[test]
fn acceptance_spectral_transfer() {
    report(&check_spectral_transfer(SEED + 4));
}

#[test]
fn acceptance_filter_bank() {
    report(&check_filter_bank(SEED + 5));
}

#[test]
fn acceptance_section_fourier() {
    report(&check_section_fourier());
}

#[test]
fn acceptance_digraphon_identity() {
    report(&check_digraphon_identity(SEED + 7));
}

#[test]
fn acceptance_uncertainty_identity() {
    report(&check_uncertainty_identity(SEED + 8));
}

#[test]
fn acceptance_representer_fit() {
    report(&check_representer_fit());
}

#[test]
fn acceptance_determinism_and_runtime() {
    let bin = env!("CARGO_BIN_EXE_boxkernel");
    let start = Instant::now();
    let mut outputs = Vec::new();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        let out = Command::new(bin)
            .arg("--out")
            .arg(dir.path())
            .arg("verify")
            .output()
            .expect("verification run");
        assert!(
            out.status.success(),
            "verification run failed:\n{}",
            String::from_utf8_lossy(&out.stdout)
        );
        let report = fs::read(dir.path().join("verify_report.csv")).unwrap();
        let echo = fs::read(dir.path().join("run.json")).unwrap();
        outputs.push((out.stdout, report, echo));
    }
    let elapsed = start.elapsed();
    let identical = outputs[0] == outputs[1];
    let in_budget = elapsed.as_secs_f64() < 120.0;
    println!(
        "{} — determinism-and-runtime — two seeded verification runs byte-identical: {identical}; both runs finished in {:.1} s (budget 120 s)",
        if identical && in_budget { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(identical, "verification runs differ between invocations");
    assert!(in_budget, "verification runs took {elapsed:?}");
}
