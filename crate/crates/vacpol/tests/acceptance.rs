//! End-to-end acceptance gate.  Runs the full built-in verification suite once
//! and prints one PASS/FAIL line per criterion (visible with `--nocapture`, or
//! automatically when an assertion trips).
//!
//! One criterion — `uehling-large-r` — is *expected* to fail: it asks the far
//! tail of the point-source potential to match the leading asymptotic form
//! (Z/4 sqrt(pi)) e^(-2r) r^(-5/2) to within 10% at r = 10, but that form
//! omits a relative correction of -29/(16r), still ~18% there, so a correct
//! evaluation cannot land inside the band.  The test pins that failure to its
//! documented shape (ratio ~0.8525 at r = 10, and ~1.041 against the
//! once-corrected tail) so any *other* kind of failure — or a silent change in
//! the tail evaluation — still trips the gate.

use std::sync::OnceLock;

use vacpol::verify::{run, CriterionResult, VerifyPaths};

/// The whole suite runs once; both tests read the shared outcome.  The slowest
/// criteria carry wall-clock budgets, so they must not compete for the CPU
/// with a second copy of themselves.
fn results() -> &'static [CriterionResult] {
    static RESULTS: OnceLock<Vec<CriterionResult>> = OnceLock::new();
    RESULTS.get_or_init(|| {
        let rs = run(None, &VerifyPaths::default()).expect("verification suite must complete");
        for r in &rs {
            println!("{}", r.line());
        }
        println!(
            "-- {} of {} passed",
            rs.iter().filter(|r| r.passed).count(),
            rs.len()
        );
        rs
    })
}

#[test]
fn every_criterion_passes_except_the_documented_tail_form() {
    let rs = results();
    assert_eq!(rs.len(), 15, "criterion list changed size");
    let failed: Vec<&str> = rs.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert_eq!(
        failed,
        vec!["uehling-large-r"],
        "expected exactly the documented far-tail failure; details:\n{}",
        rs.iter()
            .filter(|r| !r.passed)
            .map(|r| r.line())
            .collect::<Vec<_>>()
            .join("\n")
    );
}

#[test]
fn the_far_tail_failure_keeps_its_documented_shape() {
    let r = results()
        .iter()
        .find(|r| r.id == "uehling-large-r")
        .expect("far-tail criterion must exist");
    assert!(!r.passed, "the leading tail form cannot satisfy a 10% band at r = 10");
    // Pin the measured ratio and the explanation.  If the evaluation drifts,
    // or the missing -29/(16r) coefficient stops being the reason, fail loudly.
    assert!(
        r.details.contains("0.8525"),
        "far-tail ratio at r = 10 moved: {}",
        r.details
    );
    assert!(
        r.details.contains("-29/(16r)"),
        "failure explanation changed: {}",
        r.details
    );
    assert!(
        r.details.contains("1.0412"),
        "corrected-tail cross-check moved: {}",
        r.details
    );
}
