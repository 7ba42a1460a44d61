//! `vacpol spectral-lab`: finite-basis studies of the vacuum projector
//! difference Q = P_pert − P_free for a gaussian source.
//!
//! Three probes share one report: the contour-integral construction of Q
//! against the direct spectral route, the Frobenius-norm stabilization of
//! Q under grid refinement and coupling scaling, and the logarithmic
//! cutoff divergence of the coincident-point momentum integral.

use std::path::Path;

use vacpol::kernel::diagonal_divergence_study;
use vacpol::spectral::{hs_norm_study, q_contour, EtaQuadrature, OperatorMatrix, ProjectorPair};
use vacpol::{NuclearModel, RadialGrid};

use crate::config::{computation_hash, RunConfig};
use crate::output::{emit, json_report, provenance_strings, resolve_golden_dir, TableDoc};
use crate::CliError;

pub fn run(cfg: &RunConfig, out: &Path) -> Result<(), CliError> {
    let p = &cfg.spectral_lab;
    if p.kappa == 0 {
        return Err(CliError::Config("kappa = 0 is not a Dirac channel".into()));
    }
    if !(p.coupling >= 0.0 && p.coupling.is_finite()) {
        return Err(CliError::Config(format!(
            "coupling = {} must be finite and nonnegative",
            p.coupling
        )));
    }
    if !(p.width > 0.0) {
        return Err(CliError::Config(format!("width = {} must be positive", p.width)));
    }
    if !(p.r_max > 0.0) || p.n_points < 8 {
        return Err(CliError::Config(format!(
            "grid r_max = {}, n_points = {} is too small to resolve anything",
            p.r_max, p.n_points
        )));
    }

    let model = NuclearModel::gaussian(1.0, p.width);
    let grid = RadialGrid::uniform(p.r_max, p.n_points);
    let coupling = p.coupling;
    let v = move |r: f64| -coupling * model.potential(r).expect("gaussian potential, r > 0");
    let free = OperatorMatrix::free(p.kappa, &grid, 1.0)?;
    let pert = OperatorMatrix::with_potential(
        p.kappa,
        &grid,
        1.0,
        v,
        format!("gaussian width {}, coupling {}", p.width, coupling),
    )?;

    let quad = EtaQuadrature {
        initial_nodes: p.eta_initial_nodes,
        max_nodes: p.eta_max_nodes,
        rel_tol: p.eta_rel_tol,
    };
    let contour = q_contour(&free, &pert, &quad)?;
    let pair = ProjectorPair::build(&free, &pert)?;
    let spectral_norm = pair.q.norm();
    let contour_summary = serde_json::json!({
        "kappa": p.kappa,
        "coupling": coupling,
        "width": p.width,
        "nodes_used": contour.nodes_used,
        "residual": contour.residual,
        "frobenius_norm": contour.q.norm(),
        "spectral_frobenius_norm": spectral_norm,
        "relative_gap_to_spectral_route": (&contour.q - &pair.q).norm() / spectral_norm,
        "idempotency_defect": pair.idempotency_defect(),
    });

    let hs = hs_norm_study(p.width, &p.hs_couplings, &p.hs_grid_sizes, p.kappa, p.r_max)?;
    let div = diagonal_divergence_study(&model, p.divergence_k, &p.divergence_cutoffs)?;

    let hash = computation_hash(cfg);
    let provenance = provenance_strings(&resolve_golden_dir(None))?;

    let body = serde_json::json!({
        "contour": contour_summary,
        "hs_norm": hs,
        "divergence": div,
    });
    emit(out, "lab_report", "json", &json_report(&hash, &provenance, "lab", &body))?;

    let div_table = TableDoc {
        config_hash: hash,
        oracle_provenance: provenance,
        columns: vec!["cutoff", "value"],
        rows: div
            .cutoffs
            .iter()
            .zip(&div.values)
            .map(|(&c, &v)| vec![c, v])
            .collect(),
    };
    emit(out, "divergence", cfg.format.extension(), &div_table.render(cfg.format))?;
    Ok(())
}
