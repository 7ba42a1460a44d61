//! `vacpol`: command-line front end for the vacuum-polarization numerics
//! library.  Subcommands emit plot-ready tables and reports; `verify` runs
//! the built-in acceptance criteria.
//!
//! Exit status: 0 success, 1 configuration error, 2 numerical-convergence
//! failure, 3 verification failure.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::OutputFormat;

/// Environment variable overriding the output directory (beaten by --out).
const OUT_ENV: &str = "VACPOL_OUT";

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerics(vacpol::Error),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            // invalid-regime refusals are configuration errors; failures to
            // converge are numerical ones
            CliError::Numerics(e) => match e {
                vacpol::Error::Domain(_)
                | vacpol::Error::Unsupported(_)
                | vacpol::Error::Coverage(_)
                | vacpol::Error::Supercritical(_) => 1,
                _ => 2,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numerics(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<vacpol::Error> for CliError {
    fn from(e: vacpol::Error) -> Self {
        CliError::Numerics(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKindArg {
    Point,
    Gaussian,
    UniformBall,
}

impl From<ModelKindArg> for vacpol::ModelKind {
    fn from(k: ModelKindArg) -> Self {
        match k {
            ModelKindArg::Point => vacpol::ModelKind::Point,
            ModelKindArg::Gaussian => vacpol::ModelKind::Gaussian,
            ModelKindArg::UniformBall => vacpol::ModelKind::UniformBall,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "vacpol",
    version,
    about = "Vacuum-polarization numerics: kernel tables, corrected potentials, \
             radial Dirac spectra, level shifts, projector studies, verification"
)]
struct Cli {
    /// Run configuration (JSON, strict schema: docs/config.schema.json)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Table container
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Output directory (overrides VACPOL_OUT and the config)
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for independent sub-tasks; never changes the output
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Override the source charge number Z
    #[arg(long, global = true, value_name = "Z")]
    z: Option<f64>,

    /// Override the charge profile
    #[arg(long, global = true, value_enum, value_name = "KIND")]
    model: Option<ModelKindArg>,

    /// Override the profile length scale, in femtometers
    #[arg(long, global = true, value_name = "FM")]
    width_fm: Option<f64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Corrected-potential table U(r) plus the momentum table C(k), ρ̂_vac(k), Û(k)
    Uehling(UehlingArgs),
    /// One angular channel's bound levels, compared against the point-Coulomb formula
    Spectrum(SpectrumArgs),
    /// First-order level shifts and 2s–2p splittings, electronic or muonic
    Shift(ShiftArgs),
    /// Projector-difference studies: contour vs spectral, norm stabilization, cutoff divergence
    SpectralLab(LabArgs),
    /// Run acceptance criteria; exit 0 only if every criterion passes
    Verify(VerifyArgs),
}

#[derive(Args)]
struct UehlingArgs {
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    r_points: Option<usize>,
    #[arg(long)]
    k_min: Option<f64>,
    #[arg(long)]
    k_max: Option<f64>,
    #[arg(long)]
    k_points: Option<usize>,
    #[arg(long)]
    rel_tol: Option<f64>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Angular channel (nonzero integer)
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<i32>,
    /// Coupling αZ (defaults to constants.alpha × model.Z)
    #[arg(long)]
    zalpha: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
    /// Bound levels to compare
    #[arg(long)]
    levels: Option<usize>,
    /// Re-solve on a doubled grid for extrapolation/convergence columns
    #[arg(long)]
    refine: Option<bool>,
}

#[derive(Args)]
struct ShiftArgs {
    /// "hydrogen-2s2p" or "muonic"
    #[arg(long)]
    preset: Option<String>,
    /// Orbit mass in electron masses (overrides the preset's default)
    #[arg(long)]
    m_eff: Option<f64>,
    /// Relativistic channel density instead of the hydrogenic heuristic
    #[arg(long)]
    channel_density: bool,
}

#[derive(Args)]
struct LabArgs {
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<i32>,
    #[arg(long)]
    coupling: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only criteria whose id contains this substring
    #[arg(long)]
    only: Option<String>,
    /// Frozen-reference directory (default: ./data/golden, then the build-tree copy)
    #[arg(long, value_name = "DIR")]
    golden_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut cfg = config::load(cli.config.as_deref())?;
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(z) = cli.z {
        cfg.model.z = z;
    }
    if let Some(kind) = cli.model {
        cfg.model.kind = kind.into();
    }
    if let Some(w) = cli.width_fm {
        cfg.model.width_fm = w;
    }
    let out_dir = cli
        .out
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("vacpol-out"));
    let threads = cli.threads.max(1);

    match cli.cmd {
        Cmd::Uehling(a) => {
            let p = &mut cfg.uehling;
            if let Some(v) = a.r_min {
                p.r_min = v;
            }
            if let Some(v) = a.r_max {
                p.r_max = v;
            }
            if let Some(v) = a.r_points {
                p.r_points = v;
            }
            if let Some(v) = a.k_min {
                p.k_min = v;
            }
            if let Some(v) = a.k_max {
                p.k_max = v;
            }
            if let Some(v) = a.k_points {
                p.k_points = v;
            }
            if let Some(v) = a.rel_tol {
                p.rel_tol = v;
            }
            commands::uehling::run(&cfg, threads, &out_dir)?;
            Ok(0)
        }
        Cmd::Spectrum(a) => {
            let p = &mut cfg.spectrum;
            if let Some(v) = a.kappa {
                p.kappa = v;
            }
            if a.zalpha.is_some() {
                p.zalpha = a.zalpha;
            }
            if let Some(v) = a.r_max {
                p.r_max = v;
            }
            if let Some(v) = a.n_points {
                p.n_points = v;
            }
            if let Some(v) = a.levels {
                p.levels = v;
            }
            if let Some(v) = a.refine {
                p.refine = v;
            }
            commands::spectrum::run(&cfg, threads, &out_dir)?;
            Ok(0)
        }
        Cmd::Shift(a) => {
            let p = &mut cfg.shift;
            if a.preset.is_some() {
                p.preset = a.preset;
            }
            if a.m_eff.is_some() {
                p.m_eff = a.m_eff;
            }
            if a.channel_density {
                p.channel_density = true;
            }
            commands::shift::run(&cfg, &out_dir)?;
            Ok(0)
        }
        Cmd::SpectralLab(a) => {
            let p = &mut cfg.spectral_lab;
            if let Some(v) = a.kappa {
                p.kappa = v;
            }
            if let Some(v) = a.coupling {
                p.coupling = v;
            }
            if let Some(v) = a.r_max {
                p.r_max = v;
            }
            if let Some(v) = a.n_points {
                p.n_points = v;
            }
            commands::lab::run(&cfg, &out_dir)?;
            Ok(0)
        }
        Cmd::Verify(a) => {
            commands::verify::run(&cfg, a.only.as_deref(), a.golden_dir.as_deref(), &out_dir)
        }
    }
}
