//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! and fails when the criterion is not met. Criteria 1 to 7 run the shipped
//! documents through the library; criterion 8 runs all of them through the
//! binary.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use dj_cli::{run_document, DocumentReport, RunSettings, Verdict};

fn suite_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("suite")
}

fn run_shipped(file: &str) -> (DocumentReport, Duration) {
    let text = std::fs::read_to_string(suite_dir().join(file)).expect("shipped document");
    let start = Instant::now();
    let rep = run_document(&text, file, &RunSettings::default());
    (rep, start.elapsed())
}

fn has_passing_check(rep: &DocumentReport, name: &str) -> bool {
    rep.commands.iter().any(|c| c.verdict == Verdict::Pass && c.checks.iter().any(|k| k.passed && k.name == name))
}

/// Print the verdict line and fail the test when a condition is unmet.
fn verdict(n: u32, what: &str, elapsed: Duration, limit_s: u64, failures: Vec<String>) {
    let mut failures = failures;
    if elapsed > Duration::from_secs(limit_s) {
        failures.push(format!("took {:.2} s, limit {limit_s} s", elapsed.as_secs_f64()));
    }
    let line = format!("criterion {n}: {} {what} ({:.2} s, limit {limit_s} s)", if failures.is_empty() { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    println!("{line}");
    assert!(failures.is_empty(), "{line}: {}", failures.join("; "));
}

fn document_failures(rep: &DocumentReport) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(e) = &rep.error {
        out.push(e.clone());
    }
    for c in rep.commands.iter().filter(|c| c.verdict != Verdict::Pass) {
        out.push(format!("line {}: {} is {}", c.line, c.command, c.verdict.name()));
    }
    out
}

fn shipped_criterion(n: u32, file: &str, what: &str, limit_s: u64, required: &[&str]) {
    let (rep, elapsed) = run_shipped(file);
    let mut failures = document_failures(&rep);
    for name in required {
        if !has_passing_check(&rep, name) {
            failures.push(format!("missing passing check `{name}`"));
        }
    }
    verdict(n, what, elapsed, limit_s, failures);
}

#[test]
fn criterion_1_canonical_gallery() {
    let (rep, elapsed) = run_shipped("01_gallery.djx");
    let mut failures = document_failures(&rep);
    // Every gallery command must pass without an expected failure and with
    // every check passing.
    let gallery = [
        "check-jacobi canonical(J_can)",
        "check-jacobi canonical(J_can, d=2)",
        "check-hom-poisson canonical(piZ_can)",
        "check-hom-poisson canonical(piZ_can, d=2)",
        "check-gcs canonical(K_contact_can)",
        "check-gcs canonical(K_complex_can)",
        "check-dl-complex canonical(phi_can)",
        "check-dl-complex canonical(phi_can, n=2)",
        "check-nacs nacs_normal(0)",
        "check-nacs nacs_normal(x)",
        "check-nacs nacs_normal(x*y)",
    ];
    for g in gallery {
        match rep.commands.iter().find(|c| c.command == g) {
            Some(c) if c.expect.is_none() && c.checks.iter().all(|k| k.passed) && !c.checks.is_empty() => {}
            Some(c) => failures.push(format!("{g}: {:?}", c.checks.iter().filter(|k| !k.passed).collect::<Vec<_>>())),
            None => failures.push(format!("{g}: not in the document")),
        }
    }
    verdict(1, "canonical gallery passes with zero defects", elapsed, 10, failures);
}

#[test]
fn criterion_2_bracket_calculus() {
    shipped_criterion(
        2,
        "02_bracket.djx",
        "Dorfman identities on 100 random sections and the non-closed witness",
        30,
        &[
            "Dorfman bracket satisfies the Jacobi identity (100 cases)",
            "pairing is invariant under arbitrary B-fields (100 cases)",
            "bracket is invariant under closed B-fields (100 cases)",
            "non-closed B = x*du^dp breaks bracket invariance",
        ],
    );
}

#[test]
fn criterion_3_splitting() {
    let (rep, elapsed) = run_shipped("03_splitting.djx");
    let mut failures = document_failures(&rep);
    let frame_checks = rep.commands.iter().filter(|c| c.command.starts_with("frame-equal flat_product")).count();
    if frame_checks != 2 {
        failures.push(format!("expected the contact and lcs frame identities, found {frame_checks}"));
    }
    verdict(3, "contact and lcs products equal the split structures", elapsed, 10, failures);
}

#[test]
fn criterion_4_eigenbundles() {
    let (rep, elapsed) = run_shipped("04_eigenbundles.djx");
    let mut failures = document_failures(&rep);
    for needle in ["bfield(I*canonical(omega_can), derivations())", "bfield(I*canonical(xi_can), derivations())"] {
        if !rep.commands.iter().any(|c| c.command.starts_with("frame-equal") && c.command.contains(needle)) {
            failures.push(format!("no frame identity against {needle}"));
        }
    }
    verdict(4, "eigenbundles are B-transforms of the derivation frame", elapsed, 5, failures);
}

#[test]
fn criterion_5_leaf_and_transversal() {
    shipped_criterion(
        5,
        "05_leaves.djx",
        "leaf is generalized contact, transversal is hom-gc",
        10,
        &["structure is generalized_contact", "structure is hom_gc", "real section is transverse to the leaf at the origin"],
    );
}

#[test]
fn criterion_6_dolbeault_solver() {
    shipped_criterion(
        6,
        "06_dolbeault.djx",
        "solver round trip, dbar_D^2 = 0 and d_D = partial_D + dbar_D on 50 forms",
        30,
        &[
            "dbar_D(dbar_D_solve(dbar_D rho)) = dbar_D rho (50 cases)",
            "dbar_D^2 = 0 (50 cases)",
            "d_D = partial_D + dbar_D (50 cases)",
        ],
    );
}

#[test]
fn criterion_7_homogenization() {
    shipped_criterion(
        7,
        "07_homogenization.djx",
        "integrability agrees with homogenized integrability on 20 structures",
        20,
        &[
            "phi^2 = -1 (20 cases)",
            "N_phi = 0 iff the homogenized Nijenhuis torsion vanishes (20 cases)",
            "family contains integrable structures",
            "family contains non-integrable structures",
        ],
    );
}

#[test]
fn criterion_8_full_cli_suite() {
    let mut docs: Vec<PathBuf> = std::fs::read_dir(suite_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    docs.sort();
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_djx")).args(&docs).output().expect("binary runs");
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    if docs.len() != 7 {
        failures.push(format!("expected 7 shipped documents, found {}", docs.len()));
    }
    if out.status.code() != Some(0) {
        failures.push(format!("exit status {:?}\n{}", out.status.code(), String::from_utf8_lossy(&out.stdout)));
    }
    verdict(8, "all shipped documents through the binary exit 0", elapsed, 120, failures);
}
