//! `vacpol spectrum`: bound levels of one angular channel, with a
//! comparison table against the analytic point-Coulomb energies.

use std::path::Path;

use vacpol::dirac::{coulomb_dirac_energy, solve_channel, ChannelSpectrum};
use vacpol::{Error, ModelKind, RadialGrid};

use crate::config::{computation_hash, RunConfig};
use crate::output::{
    emit, json_report, parallel_map, provenance_strings, resolve_golden_dir, TableDoc,
};
use crate::CliError;

pub fn run(cfg: &RunConfig, threads: usize, out: &Path) -> Result<(), CliError> {
    let p = &cfg.spectrum;
    if p.kappa == 0 {
        return Err(CliError::Config("kappa must be a nonzero integer".into()));
    }
    if !(p.r_max > 0.0) || p.n_points < 8 || p.levels == 0 {
        return Err(CliError::Config(format!(
            "spectrum needs r_max > 0, n_points >= 8, levels >= 1; \
             got r_max = {}, n_points = {}, levels = {}",
            p.r_max, p.n_points, p.levels
        )));
    }
    let model = cfg.model.to_model(&cfg.constants)?;
    let zalpha = p.zalpha.unwrap_or(cfg.constants.alpha * model.z);
    if !(zalpha >= 0.0) {
        return Err(CliError::Config(format!("zalpha = {zalpha} must be nonnegative")));
    }
    if zalpha >= 1.0 {
        // bound-state comparisons assume a subcritical coupling
        return Err(CliError::Numerics(Error::Supercritical(zalpha)));
    }

    let v = move |r: f64| match model.kind {
        ModelKind::Point => -zalpha / r,
        _ => -zalpha * model.potential(r).expect("positive radius"),
    };
    let sizes: Vec<usize> = if p.refine {
        vec![p.n_points, 2 * p.n_points]
    } else {
        vec![p.n_points]
    };
    let spectra: Vec<ChannelSpectrum> = parallel_map(&sizes, threads, |&n| {
        Ok(solve_channel(&v, p.kappa, &RadialGrid::uniform(p.r_max, n), 1.0)?)
    })?;
    let coarse = &spectra[0];
    let fine = spectra.get(1);

    let mut available = coarse.gap_states.len();
    if let Some(f) = fine {
        available = available.min(f.gap_states.len());
    }
    let shown = p.levels.min(available);
    let mut rows = Vec::with_capacity(shown);
    for j in 0..shown {
        // gap levels map to radial quantum numbers n_r = j (kappa < 0) or
        // j + 1 (kappa > 0, which has no nodeless state)
        let n_r = if p.kappa < 0 { j as u32 } else { j as u32 + 1 };
        let coulomb = coulomb_dirac_energy(n_r, p.kappa, zalpha)?;
        let e_coarse = coarse.eigenvalues[coarse.gap_states[j]];
        let mut row = vec![j as f64, n_r as f64, e_coarse, coulomb];
        if let Some(f) = fine {
            let e_fine = f.eigenvalues[f.gap_states[j]];
            let richardson = (4.0 * e_fine - e_coarse) / 3.0;
            row.push(richardson - coulomb);
            row.push(e_fine);
            row.push(richardson);
            row.push((e_fine - e_coarse).abs());
        } else {
            row.push(e_coarse - coulomb);
        }
        rows.push(row);
    }

    let hash = computation_hash(cfg);
    let provenance = provenance_strings(&resolve_golden_dir(None))?;
    let columns: Vec<&'static str> = if p.refine {
        vec![
            "level",
            "n_r",
            "energy",
            "coulomb_energy",
            "margin",
            "energy_fine",
            "richardson",
            "convergence",
        ]
    } else {
        vec!["level", "n_r", "energy", "coulomb_energy", "margin"]
    };
    let comparison = TableDoc {
        config_hash: hash.clone(),
        oracle_provenance: provenance.clone(),
        columns,
        rows,
    };

    let finest = fine.unwrap_or(coarse);
    let spectrum_json = json_report(&hash, &provenance, "spectrum", finest);
    emit(out, "spectrum", "json", &spectrum_json)?;
    emit(out, "levels", cfg.format.extension(), &comparison.render(cfg.format))?;
    Ok(())
}
