//! `vacpol shift`: first-order level shifts and 2s–2p splittings.
//!
//! Presets pin the two canonical runs: "hydrogen-2s2p" is a point Z = 1
//! source with an electron-mass orbit, "muonic" the configured model with
//! the reduced muon mass.  Both run through the same reporting path, so
//! `--preset muonic --m-eff 1` reproduces the electronic preset bit for bit.

use std::path::Path;

use vacpol::constants::MUON_REDUCED_MASS_HYDROGEN;
use vacpol::dirac::solve_channel;
use vacpol::kernel::{uehling_point_position, uehling_position};
use vacpol::nuclear::ModelDescriptor;
use vacpol::shift::{first_order_shift_channel, muonic_report, PotentialSource, ShiftReport};
use vacpol::{ModelKind, RadialGrid};

use crate::config::{computation_hash, RunConfig};
use crate::output::{
    emit, json_report, log_spaced, provenance_strings, resolve_golden_dir, TableDoc,
};
use crate::CliError;

const MEC2_EV: f64 = vacpol::constants::MEC2_EV;

pub fn run(cfg: &RunConfig, out: &Path) -> Result<(), CliError> {
    let p = &cfg.shift;
    let (descriptor, states, m_eff) = match p.preset.as_deref() {
        Some("hydrogen-2s2p") => (
            ModelDescriptor { kind: ModelKind::Point, z: 1.0, width_fm: 0.0 },
            vec![(2, 0), (2, 1)],
            p.m_eff.unwrap_or(1.0),
        ),
        Some("muonic") => (
            cfg.model,
            vec![(2, 0), (2, 1)],
            p.m_eff.unwrap_or(MUON_REDUCED_MASS_HYDROGEN),
        ),
        Some(other) => {
            return Err(CliError::Config(format!(
                "unknown preset \"{other}\"; available: hydrogen-2s2p, muonic"
            )));
        }
        None => (cfg.model, p.states.clone(), p.m_eff.unwrap_or(cfg.constants.m_eff)),
    };
    if states.is_empty() {
        return Err(CliError::Config("shift needs at least one (n, l) state".into()));
    }
    let model = descriptor.to_model(&cfg.constants)?;
    let alpha = cfg.constants.alpha;

    let mut report = muonic_report(&model, &states, alpha, m_eff)?;
    let density_route = if p.channel_density {
        replace_with_channel_density(&mut report, &model, &states, alpha, m_eff)?;
        "relativistic-channel"
    } else {
        "nonrelativistic-hydrogenic"
    };

    let hash = computation_hash(cfg);
    let provenance = provenance_strings(&resolve_golden_dir(None))?;

    let mut body = serde_json::to_value(&report).expect("report serializes");
    body["density_route"] = serde_json::Value::String(density_route.into());
    let report_json = json_report(&hash, &provenance, "report", &body);

    let states_table = TableDoc {
        config_hash: hash.clone(),
        oracle_provenance: provenance.clone(),
        columns: vec!["n", "l", "delta_e", "delta_e_ev", "point_limit"],
        rows: report
            .states
            .iter()
            .map(|s| vec![s.n as f64, s.l as f64, s.delta_e, s.delta_e_ev, s.point_limit])
            .collect(),
    };
    let splittings_table = TableDoc {
        config_hash: hash,
        oracle_provenance: provenance,
        columns: vec!["n", "value", "value_ev"],
        rows: report
            .splittings
            .iter()
            .map(|s| vec![s.n as f64, s.value, s.value_ev])
            .collect(),
    };

    emit(out, "shift_report", "json", &report_json)?;
    let ext = cfg.format.extension();
    emit(out, "shift_states", ext, &states_table.render(cfg.format))?;
    emit(out, "shift_splittings", ext, &splittings_table.render(cfg.format))?;
    Ok(())
}

/// Recomputes every state's shift with the channel density (f² + g²) from
/// the radial Dirac solver, then rebuilds the splittings.  Supports s and
/// p (j = 1/2) states, the ones the reports are about.
fn replace_with_channel_density(
    report: &mut ShiftReport,
    model: &vacpol::NuclearModel,
    states: &[(u32, u32)],
    alpha: f64,
    m_eff: f64,
) -> Result<(), CliError> {
    let z = model.z;
    let coupling = z * alpha;
    let n_max = states.iter().map(|&(n, _)| n).max().expect("states nonempty") as f64;
    let bohr = 1.0 / (coupling * m_eff);
    let r_lo = 5e-6 * bohr;
    let r_up = 45.0 * n_max * bohr;
    let grid = RadialGrid::log(r_lo, r_up, 1200);

    // one potential evaluation route shared by every state
    let table;
    let closure;
    let source = match model.kind {
        ModelKind::Point => {
            closure = move |r: f64| uehling_point_position(z, r).map(|q| q.value);
            PotentialSource::Function(&closure)
        }
        _ => {
            let radii = log_spaced(0.5 * r_lo, 1.05 * r_up, 320);
            table = uehling_position(model, &radii, 1e-8)?;
            PotentialSource::Table(&table)
        }
    };

    let owned = *model;
    let v = move |r: f64| match owned.kind {
        ModelKind::Point => -coupling / r,
        _ => -coupling * owned.potential(r).expect("positive radius"),
    };
    let mut solved: Vec<(i32, vacpol::dirac::ChannelSpectrum)> = Vec::new();
    for (state, &(n, l)) in report.states.iter_mut().zip(states) {
        let (kappa, gap_index) = match l {
            0 => (-1i32, (n - 1) as usize),
            1 => (1i32, (n - 2) as usize),
            _ => {
                return Err(CliError::Config(format!(
                    "channel density supports s and p states, got l = {l}"
                )));
            }
        };
        if !solved.iter().any(|(k, _)| *k == kappa) {
            solved.push((kappa, solve_channel(&v, kappa, &grid, m_eff)?));
        }
        let spectrum = &solved.iter().find(|(k, _)| *k == kappa).expect("just inserted").1;
        let spinor = spectrum.spinors.get(gap_index).ok_or_else(|| {
            CliError::Numerics(vacpol::Error::Domain(format!(
                "channel kappa = {kappa} produced only {} bound states, \
                 state (n = {n}, l = {l}) needs index {gap_index}",
                spectrum.spinors.len()
            )))
        })?;
        state.delta_e = first_order_shift_channel(&source, spinor, &grid, alpha)?;
        state.delta_e_ev = state.delta_e * MEC2_EV;
        state.point_limit_ratio = if state.point_limit != 0.0 {
            Some(state.delta_e / state.point_limit)
        } else {
            None
        };
    }
    for split in &mut report.splittings {
        let s = report.states.iter().find(|t| t.n == split.n && t.l == 0);
        let p = report.states.iter().find(|t| t.n == split.n && t.l == 1);
        if let (Some(s), Some(p)) = (s, p) {
            split.value = s.delta_e - p.delta_e;
            split.value_ev = split.value * MEC2_EV;
        }
    }
    Ok(())
}
