//! `vacpol verify`: runs the built-in verification suite and reports one
//! machine-readable pass/fail per criterion.
//!
//! Exit code 0 only when every selected criterion passes; 3 when any
//! fails.  The JSON report omits timings so repeated runs are
//! byte-identical.

use std::path::Path;

use vacpol::verify::{self, VerifyPaths};

use crate::config::{computation_hash, RunConfig};
use crate::output::{emit, json_report, provenance_strings, resolve_golden_dir, resolve_momenta};
use crate::CliError;

pub fn run(
    cfg: &RunConfig,
    only: Option<&str>,
    golden_dir: Option<&Path>,
    out: &Path,
) -> Result<u8, CliError> {
    let paths = VerifyPaths {
        golden_dir: resolve_golden_dir(golden_dir),
        momenta: resolve_momenta(),
    };
    let results = verify::run(only, &paths).map_err(|e| match e {
        vacpol::Error::Domain(m) => CliError::Config(m),
        other => CliError::Numerics(other),
    })?;

    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("-- {passed} of {} passed", results.len());

    let provenance = provenance_strings(&paths.golden_dir)
        .unwrap_or_else(|e| vec![format!("unavailable: {e}")]);
    let entries: Vec<serde_json::Value> = results
        .iter()
        .map(|r| {
            serde_json::json!({
                "id": r.id,
                "label": r.label,
                "passed": r.passed,
                "details": r.details,
            })
        })
        .collect();
    let body = serde_json::json!({
        "criteria": entries,
        "passed": passed,
        "total": results.len(),
    });
    emit(
        out,
        "verify_report",
        "json",
        &json_report(&computation_hash(cfg), &provenance, "verify", &body),
    )?;

    if passed == results.len() {
        Ok(0)
    } else {
        let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
        eprintln!("verification failed: {}", failed.join(", "));
        Ok(3)
    }
}
