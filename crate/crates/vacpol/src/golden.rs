//! Frozen reference values: loading, recomputation, drift detection.
//!
//! Each JSON file under `data/golden` pairs inputs with values frozen from
//! a high-precision independent evaluation route; the `provenance` string
//! records which route and at what working precision. [`check_file`]
//! recomputes every entry with this library's own code and compares within
//! the per-entry relative tolerance, so numerical drift — or a tampered
//! file — surfaces as a mismatch naming the file and the offending input.

use crate::constants::{ALPHA_DEFAULT, MUON_REDUCED_MASS_HYDROGEN};
use crate::dirac::HydrogenicState;
use crate::error::{Error, Result};
use crate::kernel::{
    c_closed, diagonal_divergence_study, f0_integral, linear_fit, uehling_point_position,
    uehling_position,
};
use crate::nuclear::NuclearModel;
use crate::shift::{first_order_shift, point_limit_shift, PotentialSource};
use serde::Deserialize;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenEntry {
    pub x: f64,
    pub value: f64,
    /// relative tolerance for recomputation
    pub tol: f64,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenFile {
    pub name: String,
    pub provenance: String,
    pub entries: Vec<GoldenEntry>,
}

impl GoldenFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
        let file: GoldenFile = serde_json::from_str(&text)
            .map_err(|e| Error::Domain(format!("bad golden file {}: {e}", path.display())))?;
        if file.entries.is_empty() {
            return Err(Error::Domain(format!(
                "golden file {} has no entries",
                path.display()
            )));
        }
        Ok(file)
    }
}

/// The in-repo golden directory, resolved at compile time.
pub fn default_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/golden"))
}

/// Loads every `*.json` in a directory, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<GoldenFile>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Domain(format!("cannot list {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Domain(format!(
            "no golden files found in {}",
            dir.display()
        )));
    }
    paths.iter().map(|p| GoldenFile::load(p)).collect()
}

/// One recomputed entry, ready for reporting.
#[derive(Debug, Clone)]
pub struct GoldenCheck {
    pub file: String,
    pub x: f64,
    pub note: Option<String>,
    pub want: f64,
    pub got: f64,
    pub rel: f64,
    pub tol: f64,
    pub ok: bool,
}

fn point_shift_from_code(code: f64) -> Result<f64> {
    // encoding: 0 → closed form at n = 2; ±(10n + l) → quadrature with
    // m = 1 (positive) or the reduced muon mass (negative)
    if code == 0.0 {
        return point_limit_shift(2, 0, 1.0, ALPHA_DEFAULT, 1.0);
    }
    let m_eff = if code < 0.0 { MUON_REDUCED_MASS_HYDROGEN } else { 1.0 };
    let packed = code.abs() as u32;
    let (n, l) = (packed / 10, packed % 10);
    let source = |r: f64| uehling_point_position(1.0, r).map(|q| q.value);
    let psi = HydrogenicState::new(n, l, ALPHA_DEFAULT * m_eff)?;
    first_order_shift(&PotentialSource::Function(&source), &psi, ALPHA_DEFAULT)
}

/// Recomputes every entry of one golden file with the library's own
/// routines. The file's `name` selects the computation; an unrecognized
/// name is an error so a renamed file cannot pass silently.
pub fn check_file(file: &GoldenFile) -> Result<Vec<GoldenCheck>> {
    let gaussian = NuclearModel::gaussian(1.0, 1.0);
    let recomputed: Vec<f64> = match file.name.as_str() {
        "kernel_c" => file.entries.iter().map(|e| c_closed(e.x)).collect(),
        "uehling_point" => file
            .entries
            .iter()
            .map(|e| uehling_point_position(1.0, e.x).map(|q| q.value))
            .collect::<Result<_>>()?,
        "uehling_gaussian" => {
            let radii: Vec<f64> = file.entries.iter().map(|e| e.x).collect();
            uehling_position(&gaussian, &radii, 1e-9)?.values
        }
        "f0" => file
            .entries
            .iter()
            .map(|e| {
                if e.x > 0.0 {
                    f0_integral(e.x, 1e-10).map(|q| q.value)
                } else {
                    // x = 0 row: fitted log-slope on the same three small
                    // xi used when the value was frozen
                    let xs = [2e-3f64, 6.32455532e-3, 2e-2];
                    let mut lx = [0.0; 3];
                    let mut fv = [0.0; 3];
                    for (i, &xi) in xs.iter().enumerate() {
                        lx[i] = xi.ln();
                        fv[i] = f0_integral(xi, 1e-9)?.value;
                    }
                    Ok(linear_fit(&lx, &fv).0)
                }
            })
            .collect::<Result<_>>()?,
        "divergence_study" => {
            // x > 0 rows are cutoffs; an x = 0 row is the fitted slope
            let cutoffs: Vec<f64> = file.entries.iter().map(|e| e.x).filter(|&x| x > 0.0).collect();
            let study = diagonal_divergence_study(&gaussian, 1.0, &cutoffs)?;
            let mut per_cutoff = study.values.iter();
            file.entries
                .iter()
                .map(|e| {
                    if e.x > 0.0 {
                        *per_cutoff.next().expect("one study value per positive x")
                    } else {
                        study.fitted_slope
                    }
                })
                .collect()
        }
        "shifts_point" => file
            .entries
            .iter()
            .map(|e| point_shift_from_code(e.x))
            .collect::<Result<_>>()?,
        other => {
            return Err(Error::Domain(format!(
                "golden file name '{other}' has no recomputation rule"
            )))
        }
    };
    Ok(file
        .entries
        .iter()
        .zip(recomputed)
        .map(|(e, got)| {
            let rel = (got - e.value).abs() / e.value.abs().max(f64::MIN_POSITIVE);
            GoldenCheck {
                file: file.name.clone(),
                x: e.x,
                note: e.note.clone(),
                want: e.value,
                got,
                rel,
                tol: e.tol,
                ok: rel <= e.tol,
            }
        })
        .collect())
}

/// Loads and recomputes every golden file in a directory.
pub fn check_dir(dir: &Path) -> Result<Vec<GoldenCheck>> {
    let mut out = Vec::new();
    for file in load_dir(dir)? {
        out.extend(check_file(&file)?);
    }
    Ok(out)
}
