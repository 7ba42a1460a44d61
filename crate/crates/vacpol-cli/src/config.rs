//! Strict run configuration and the computation hash embedded in outputs.
//!
//! A config file is JSON, validated against the schema in
//! `docs/config.schema.json`: every object is closed (unknown keys are
//! rejected with the offending line and column) and every block is optional
//! with documented defaults, so an empty object `{}` is a complete config.
//!
//! The computation hash covers only inputs that affect the numbers —
//! constants, model, and command parameter blocks.  Plumbing (`format`,
//! `out`, thread count) is excluded, so the same computation emitted as CSV
//! or JSON, into any directory, at any parallelism, carries the same hash.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use vacpol::nuclear::{ModelDescriptor, ModelKind};
use vacpol::Constants;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

fn default_model() -> ModelDescriptor {
    ModelDescriptor { kind: ModelKind::Point, z: 1.0, width_fm: 0.0 }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub constants: Constants,
    pub model: ModelDescriptor,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub uehling: UehlingParams,
    pub spectrum: SpectrumParams,
    pub shift: ShiftParams,
    pub spectral_lab: LabParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            constants: Constants::default(),
            model: default_model(),
            format: OutputFormat::Csv,
            out: None,
            uehling: UehlingParams::default(),
            spectrum: SpectrumParams::default(),
            shift: ShiftParams::default(),
            spectral_lab: LabParams::default(),
        }
    }
}

/// Radial and momentum sampling for the corrected-potential tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct UehlingParams {
    pub r_min: f64,
    pub r_max: f64,
    pub r_points: usize,
    pub k_min: f64,
    pub k_max: f64,
    pub k_points: usize,
    pub rel_tol: f64,
}

impl Default for UehlingParams {
    fn default() -> Self {
        UehlingParams {
            r_min: 1e-3,
            r_max: 10.0,
            r_points: 120,
            k_min: 1e-3,
            k_max: 1e3,
            k_points: 61,
            rel_tol: 1e-8,
        }
    }
}

/// Single-channel bound-state run.  `zalpha` defaults to α·Z from the
/// constants and model blocks when absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectrumParams {
    pub kappa: i32,
    pub zalpha: Option<f64>,
    pub r_max: f64,
    pub n_points: usize,
    pub levels: usize,
    /// Re-solve on a doubled grid and add extrapolation/convergence columns.
    pub refine: bool,
}

impl Default for SpectrumParams {
    fn default() -> Self {
        SpectrumParams { kappa: -1, zalpha: None, r_max: 60.0, n_points: 600, levels: 3, refine: true }
    }
}

/// Level-shift run.  Presets: "hydrogen-2s2p" (point Z = 1, electron mass)
/// and "muonic" (config model, reduced muon mass). `m_eff` overrides the
/// preset's orbit mass; without a preset it falls back to constants.m_eff.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShiftParams {
    pub preset: Option<String>,
    pub m_eff: Option<f64>,
    /// (n, l) pairs.
    pub states: Vec<(u32, u32)>,
    /// Use the relativistic channel density from the radial Dirac solver in
    /// place of the nonrelativistic hydrogenic heuristic (s and p states).
    pub channel_density: bool,
}

impl Default for ShiftParams {
    fn default() -> Self {
        ShiftParams { preset: None, m_eff: None, states: vec![(2, 0), (2, 1)], channel_density: false }
    }
}

/// Projector-difference studies: one contour-vs-spectral comparison, a
/// Frobenius-norm stabilization study, and the cutoff-divergence fit.
/// Lengths here are natural units (1/m), not femtometers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LabParams {
    pub kappa: i32,
    pub coupling: f64,
    /// Gaussian profile width for all three studies.
    pub width: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub hs_couplings: Vec<f64>,
    pub hs_grid_sizes: Vec<usize>,
    pub eta_initial_nodes: usize,
    pub eta_max_nodes: usize,
    pub eta_rel_tol: f64,
    pub divergence_k: f64,
    pub divergence_cutoffs: Vec<f64>,
}

impl Default for LabParams {
    fn default() -> Self {
        let cutoffs = (0..8)
            .map(|i| 1e2 * 1e2f64.powf(i as f64 / 7.0))
            .collect();
        LabParams {
            kappa: -1,
            coupling: 0.5,
            width: 1.0,
            r_max: 30.0,
            n_points: 240,
            hs_couplings: vec![0.3, 0.5],
            hs_grid_sizes: vec![100, 140, 180],
            eta_initial_nodes: 16,
            eta_max_nodes: 1024,
            eta_rel_tol: 1e-8,
            divergence_k: 1.0,
            divergence_cutoffs: cutoffs,
        }
    }
}

/// Loads a config file, or the documented defaults when no path is given.
pub fn load(path: Option<&Path>) -> Result<RunConfig, CliError> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    // serde_json errors carry "at line L column C"
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// SHA-256 over the canonical JSON of the computation-relevant config.
pub fn computation_hash(cfg: &RunConfig) -> String {
    let mut v = serde_json::to_value(cfg).expect("config serializes");
    if let serde_json::Value::Object(map) = &mut v {
        map.remove("format");
        map.remove("out");
    }
    // serde_json objects iterate in sorted key order, so this is canonical
    let digest = Sha256::digest(v.to_string().as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}
