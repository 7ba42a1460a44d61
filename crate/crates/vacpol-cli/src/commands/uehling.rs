//! `vacpol uehling`: the corrected-potential table U(r) and the momentum
//! table C(k), ρ̂_vac(k), Û(k) for the configured charge model.

use std::path::Path;

use vacpol::kernel::{kernel_eval, uehling_point_position, uehling_position};
use vacpol::ModelKind;

use crate::config::{computation_hash, RunConfig};
use crate::output::{
    emit, log_spaced, parallel_map, provenance_strings, resolve_golden_dir, TableDoc,
};
use crate::CliError;

pub fn run(cfg: &RunConfig, threads: usize, out: &Path) -> Result<(), CliError> {
    let p = &cfg.uehling;
    if !(p.r_min > 0.0 && p.r_max > p.r_min && p.r_points >= 2) {
        return Err(CliError::Config(format!(
            "uehling radial sampling needs 0 < r_min < r_max and r_points >= 2, \
             got r_min = {}, r_max = {}, r_points = {}",
            p.r_min, p.r_max, p.r_points
        )));
    }
    if !(p.k_min > 0.0 && p.k_max > p.k_min && p.k_points >= 2) {
        return Err(CliError::Config(format!(
            "uehling momentum sampling needs 0 < k_min < k_max and k_points >= 2, \
             got k_min = {}, k_max = {}, k_points = {}",
            p.k_min, p.k_max, p.k_points
        )));
    }
    let model = cfg.model.to_model(&cfg.constants)?;
    let hash = computation_hash(cfg);
    let provenance = provenance_strings(&resolve_golden_dir(None))?;

    let radii = log_spaced(p.r_min, p.r_max, p.r_points);
    let position_rows = match model.kind {
        ModelKind::Point => parallel_map(&radii, threads, |&r| {
            let q = uehling_point_position(model.z, r)?;
            Ok(vec![r, q.value, q.abs_error])
        })?,
        _ => parallel_map(&radii, threads, |&r| {
            let table = uehling_position(&model, &[r], p.rel_tol)?;
            Ok(vec![r, table.values[0], table.errors[0]])
        })?,
    };

    let momenta = log_spaced(p.k_min, p.k_max, p.k_points);
    let momentum_rows = parallel_map(&momenta, threads, |&k| {
        let e = kernel_eval(&model, k)?;
        Ok(vec![k, e.c, e.rho_vac_hat, e.u_hat])
    })?;

    let position = TableDoc {
        config_hash: hash.clone(),
        oracle_provenance: provenance.clone(),
        columns: vec!["r", "value", "error_estimate"],
        rows: position_rows,
    };
    let momentum = TableDoc {
        config_hash: hash,
        oracle_provenance: provenance,
        columns: vec!["k", "c_kernel", "rho_vac_hat", "u_hat"],
        rows: momentum_rows,
    };

    // all numbers exist before the first byte is written
    let ext = cfg.format.extension();
    emit(out, "uehling_position", ext, &position.render(cfg.format))?;
    emit(out, "uehling_momentum", ext, &momentum.render(cfg.format))?;
    Ok(())
}
