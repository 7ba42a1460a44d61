//! End-to-end verification suite.
//!
//! Each criterion re-derives one documented numerical contract of the
//! library — kernel identities, asymptotic laws, spectral ordering,
//! projector construction, cancellation structure, frozen references —
//! and reports pass/fail together with the measured numbers, so a report
//! is readable on its own. Everything here is deterministic: fixed grids,
//! fixed node counts, seeded momenta from the checked-in data file.

use crate::dirac::{coulomb_dirac_energy, solve_channel, ChannelSpectrum, HydrogenicState};
use crate::error::{Error, Result};
use crate::golden;
use crate::grid::RadialGrid;
use crate::kernel::{
    c_closed, c_integral, diagonal_divergence_study, uehling_point_far_field,
    uehling_point_position, uehling_point_small_r, vacuum_density_fourier,
};
use crate::nuclear::NuclearModel;
use crate::shift::{
    effective_potential, first_order_shift, log_dominance_table, point_limit_shift,
    PotentialSource,
};
use crate::spectral::{
    q1_trace_kernel, q1_trace_kernel_quadrature, q2_density_cancellation, q_contour,
    EtaQuadrature, OperatorMatrix, ProjectorPair, Vec3,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Where the checked-in reference data lives; tests and the CLI can
/// substitute their own copies.
#[derive(Debug, Clone)]
pub struct VerifyPaths {
    pub golden_dir: PathBuf,
    pub momenta: PathBuf,
}

impl Default for VerifyPaths {
    fn default() -> Self {
        VerifyPaths {
            golden_dir: golden::default_dir(),
            momenta: PathBuf::from(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/../../data/momenta.json"
            )),
        }
    }
}

/// Outcome of one criterion, with the measured numbers in `details`.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: &'static str,
    pub label: &'static str,
    pub passed: bool,
    pub details: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.seconds,
            self.details
        )
    }
}

type CriterionFn = fn(&VerifyPaths) -> Result<(bool, String)>;

struct Criterion {
    id: &'static str,
    label: &'static str,
    run: CriterionFn,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: "c-dual-form", label: "kernel dual-form identity", run: c_dual_form },
    Criterion { id: "c-small-k", label: "kernel small-k quartic law", run: c_small_k },
    Criterion { id: "c-large-k", label: "kernel large-k log law", run: c_large_k },
    Criterion {
        id: "uehling-small-r",
        label: "point potential short-distance law",
        run: uehling_small_r,
    },
    Criterion {
        id: "uehling-large-r",
        label: "point potential far-field law",
        run: uehling_large_r,
    },
    Criterion { id: "route-identity", label: "momentum-space route identity", run: route_identity },
    Criterion {
        id: "zero-induced-charge",
        label: "vanishing net induced charge",
        run: zero_induced_charge,
    },
    Criterion { id: "uehling-shift", label: "first-order level shifts", run: uehling_shift },
    Criterion {
        id: "effective-potential",
        label: "effective potential two-term form",
        run: effective_potential_check,
    },
    Criterion {
        id: "dirac-ordering",
        label: "channel spectra dominate the Coulomb comparison",
        run: dirac_ordering,
    },
    Criterion {
        id: "contour-formula",
        label: "contour vs spectral projector difference",
        run: contour_formula,
    },
    Criterion { id: "q1-kernel", label: "first-order trace kernel closed form", run: q1_kernel },
    Criterion {
        id: "q2-cancellation",
        label: "second-order density cancellation",
        run: q2_cancellation,
    },
    Criterion {
        id: "log-divergence",
        label: "coincident-point log divergence",
        run: log_divergence,
    },
    Criterion {
        id: "golden-regression",
        label: "frozen reference values recompute",
        run: golden_regression,
    },
];

pub fn criterion_ids() -> Vec<&'static str> {
    CRITERIA.iter().map(|c| c.id).collect()
}

/// Runs the suite (or the subset whose id contains `filter`), never
/// panicking: a criterion that errors out is reported as failed with the
/// error text in its details.
pub fn run(filter: Option<&str>, paths: &VerifyPaths) -> Result<Vec<CriterionResult>> {
    let selected: Vec<&Criterion> = match filter {
        None => CRITERIA.iter().collect(),
        Some(f) => {
            let hit: Vec<&Criterion> = CRITERIA.iter().filter(|c| c.id.contains(f)).collect();
            if hit.is_empty() {
                return Err(Error::Domain(format!(
                    "no criterion id contains '{f}'; known ids: {}",
                    criterion_ids().join(", ")
                )));
            }
            hit
        }
    };
    let mut out = Vec::with_capacity(selected.len());
    for c in selected {
        let t0 = Instant::now();
        let (passed, details) = match (c.run)(paths) {
            Ok(pair) => pair,
            Err(e) => (false, format!("did not complete: {e}")),
        };
        out.push(CriterionResult {
            id: c.id,
            label: c.label,
            passed,
            details,
            seconds: t0.elapsed().as_secs_f64(),
        });
    }
    Ok(out)
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = hi / lo;
    (0..n)
        .map(|i| lo * ratio.powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn c_dual_form(_: &VerifyPaths) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut worst_k = 0.0f64;
    for k in log_spaced(1e-3, 1e3, 60) {
        let closed = c_closed(k);
        let integral = c_integral(k)?.value;
        let rel = (closed - integral).abs() / closed.abs();
        if rel > worst {
            worst = rel;
            worst_k = k;
        }
    }
    Ok((
        worst <= 1e-9,
        format!(
            "closed vs integral form: worst relative gap {worst:.3e} at k = {worst_k:.3e} \
             over 60 log-spaced k in [1e-3, 1e3] (tolerance 1e-9)"
        ),
    ))
}

fn c_small_k(_: &VerifyPaths) -> Result<(bool, String)> {
    let target = 1.0 / 15.0;
    let mut worst = 0.0f64;
    for k in [1e-3, 3e-3, 1e-2] {
        let flat = c_closed(k) / k.powi(4);
        worst = worst.max((flat - target).abs());
    }
    Ok((
        worst <= 1e-3 * target,
        format!(
            "C(k)/k^4 vs 1/15: worst absolute gap {worst:.3e} at k in {{1e-3, 3e-3, 1e-2}} \
             (tolerance {:.3e})",
            1e-3 * target
        ),
    ))
}

fn c_large_k(_: &VerifyPaths) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for k in [1e3, 1e4] {
        let gap = (c_closed(k) / (k * k) - (2.0 / 3.0) * k.ln() + 5.0 / 9.0).abs();
        worst = worst.max(gap);
    }
    Ok((
        worst <= 1e-2,
        format!(
            "C(k)/k^2 vs (2/3)log k - 5/9: worst absolute gap {worst:.3e} at k in \
             {{1e3, 1e4}} (tolerance 1e-2)"
        ),
    ))
}

fn uehling_small_r(_: &VerifyPaths) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for r in [1e-4, 3e-4] {
        let numeric = uehling_point_position(1.0, r)?.value;
        let law = uehling_point_small_r(1.0, r);
        worst = worst.max((numeric / law - 1.0).abs());
    }
    Ok((
        worst <= 0.01,
        format!(
            "U(r) vs -(2Z/3 pi r)(log r + 5/6 + gamma): worst ratio deviation {worst:.3e} \
             at r in {{1e-4, 3e-4}} (tolerance 1e-2)"
        ),
    ))
}

fn uehling_large_r(_: &VerifyPaths) -> Result<(bool, String)> {
    let ratio_at = |r: f64| -> Result<f64> {
        Ok(uehling_point_position(1.0, r)?.value / uehling_point_far_field(1.0, r, false))
    };
    let r5 = ratio_at(5.0)?;
    let r10 = ratio_at(10.0)?;
    let within = (r10 - 1.0).abs() <= 0.10;
    let improving = (r10 - 1.0).abs() < (r5 - 1.0).abs();
    let corrected10 =
        uehling_point_position(1.0, 10.0)?.value / uehling_point_far_field(1.0, 10.0, true);
    Ok((
        within && improving,
        format!(
            "numeric/leading-tail ratio: {r5:.6} at r = 5, {r10:.6} at r = 10 \
             (requires within 10% of 1 at r = 10, improving from r = 5). The leading \
             form (Z/4 sqrt(pi)) e^(-2r) r^(-5/2) omits the next tail coefficient, \
             -29/(16r) relatively, which is still 18% at r = 10, so the 10% band is \
             unreachable there for a correct evaluation; against the corrected tail the \
             ratio is {corrected10:.8}"
        ),
    ))
}

fn route_identity(_: &VerifyPaths) -> Result<(bool, String)> {
    let models = [
        NuclearModel::point(1.0),
        NuclearModel::gaussian(1.0, 1.0),
        NuclearModel::uniform_ball(1.0, 1.0),
    ];
    let mut worst = 0.0f64;
    let mut at = String::new();
    for model in &models {
        for k in log_spaced(1e-3, 1e3, 60) {
            let c = c_closed(k);
            let k2 = k * k;
            let via_potential = model.potential_fourier(k)? * c / (std::f64::consts::PI * k2);
            let via_density = 4.0 * model.density_fourier(k)? * c / (k2 * k2);
            let scale = via_potential.abs().max(via_density.abs());
            if scale == 0.0 {
                continue;
            }
            let rel = (via_potential - via_density).abs() / scale;
            if rel > worst {
                worst = rel;
                at = format!("{} at k = {k:.3e}", model.kind.label());
            }
        }
    }
    Ok((
        worst <= 1e-14,
        format!(
            "potential route vs density route: worst relative gap {worst:.3e} ({at}) \
             across point, gaussian, uniform-ball on 60 k each (tolerance 1e-14)"
        ),
    ))
}

fn zero_induced_charge(_: &VerifyPaths) -> Result<(bool, String)> {
    let mut details = String::new();
    let mut passed = true;
    for model in [NuclearModel::point(1.0), NuclearModel::gaussian(1.0, 1.0)] {
        let small = vacuum_density_fourier(&model, 1e-4)?.abs();
        let unit = vacuum_density_fourier(&model, 1.0)?.abs();
        let ok = small <= 1e-6 * unit;
        passed &= ok;
        let _ = write!(
            details,
            "{}: |rho(1e-4)|/|rho(1)| = {:.3e}; ",
            model.kind.label(),
            small / unit
        );
    }
    details.push_str("tolerance 1e-6");
    Ok((passed, details))
}

fn uehling_shift(_: &VerifyPaths) -> Result<(bool, String)> {
    let alpha = 1.0 / 137.036;
    let source = |r: f64| uehling_point_position(1.0, r).map(|q| q.value);
    let u = PotentialSource::Function(&source);
    let shift = |n: u32, l: u32| -> Result<f64> {
        first_order_shift(&u, &HydrogenicState::new(n, l, alpha)?, alpha)
    };
    let d20 = shift(2, 0)?;
    let d10 = shift(1, 0)?;
    let d21 = shift(2, 1)?;
    let formula = point_limit_shift(2, 0, 1.0, alpha, 1.0)?;
    let against_formula = (d20 / formula - 1.0).abs();
    let ratio = d10 / d20;
    let ratio_gap = (ratio / 8.0 - 1.0).abs();
    let p_fraction = d21.abs() / d20.abs();
    let passed = against_formula <= 0.02 && ratio_gap <= 0.02 && p_fraction <= 0.01;
    Ok((
        passed,
        format!(
            "dE(2,0) = {d20:.6e} vs closed form {formula:.6e} (off by {against_formula:.3e}, \
             tolerance 2e-2); dE(1,0)/dE(2,0) = {ratio:.6} vs 8 (off by {ratio_gap:.3e}); \
             |dE(2,1)|/|dE(2,0)| = {p_fraction:.3e} (tolerance 1e-2)"
        ),
    ))
}

fn effective_potential_check(_: &VerifyPaths) -> Result<(bool, String)> {
    let alpha = 1.0 / 137.036;
    let mut worst = 0.0f64;
    for r in [1e-4, 3e-4] {
        let ep = effective_potential(1.0, alpha, r)?;
        worst = worst.max((ep.total / ep.two_term - 1.0).abs());
    }
    // diagnostic: the log enhancement outgrows every fixed Coulomb multiple
    let radii = [1e-4, 1e-20, 1e-60, 1e-150, 1e-300];
    let table = log_dominance_table(1.0, alpha, &radii)?;
    let growing = table
        .windows(2)
        .all(|w| w[1].log_to_coulomb_ratio > w[0].log_to_coulomb_ratio);
    let mut diag = String::new();
    for ep in &table {
        let _ = write!(diag, "{:.0e}:{:.3} ", ep.r, ep.log_to_coulomb_ratio);
    }
    let dominant_deep = table.last().is_some_and(|ep| ep.log_term_dominant);
    let passed = worst <= 0.01 && growing && dominant_deep;
    Ok((
        passed,
        format!(
            "two-term form off by {worst:.3e} at r in {{1e-4, 3e-4}} (tolerance 1e-2); \
             log/Coulomb ratio by radius: {diag}- grows monotonically ({growing}) and \
             exceeds 1 at the deep end ({dominant_deep})"
        ),
    ))
}

fn first_gap_energies(s: &ChannelSpectrum, count: usize) -> Result<Vec<f64>> {
    if s.gap_states.len() < count {
        return Err(Error::Domain(format!(
            "channel kappa = {} has only {} gap states, need {count}",
            s.kappa,
            s.gap_states.len()
        )));
    }
    Ok(s.gap_states[..count].iter().map(|&j| s.eigenvalues[j]).collect())
}

fn dirac_ordering(_: &VerifyPaths) -> Result<(bool, String)> {
    // Box size is the binding constraint, not grid spacing: the third kappa = +1
    // gap state reaches its classical turning point near 2 * 4^2 / zalpha, and a
    // wall inside its evanescent tail drags the computed level BELOW the
    // infinite-domain value (truncation of the gap problem is not monotone the
    // way a Dirichlet cut is for a Schroedinger operator).  A box at ~2x the
    // turning point shrinks the wall shift below 1e-7 while the smallest
    // physical margin (third p-channel level, width 0.5) is ~1.7e-6.
    let mut min_margin = f64::INFINITY;
    let mut min_margin_at = String::new();
    let mut min_gap_value = f64::INFINITY;
    let mut levels = 0usize;
    for zalpha in [0.3f64, 0.5, 0.8] {
        let r_max = 60.0 / zalpha;
        let grid = RadialGrid::uniform(r_max, (r_max / 0.2) as usize);
        for width in [0.5f64, 1.0, 2.0] {
            let model = NuclearModel::gaussian(1.0, width);
            let v = move |r: f64| -zalpha * model.potential(r).expect("gaussian potential, r > 0");
            for kappa in [-1i32, 1] {
                let s = solve_channel(&v, kappa, &grid, 1.0)?;
                let energies = first_gap_energies(&s, 3)?;
                for (j, &energy) in energies.iter().enumerate() {
                    let n_r = if kappa < 0 { j as u32 } else { j as u32 + 1 };
                    let sommerfeld = coulomb_dirac_energy(n_r, kappa, zalpha)?;
                    let margin = energy - sommerfeld;
                    levels += 1;
                    if margin < min_margin {
                        min_margin = margin;
                        min_margin_at = format!(
                            "zalpha = {zalpha}, width = {width}, kappa = {kappa}, level {j}"
                        );
                    }
                }
                for &j in &s.gap_states {
                    min_gap_value = min_gap_value.min(s.eigenvalues[j]);
                }
            }
        }
    }
    // point-Coulomb cross-check: extrapolated ground state vs the analytic value
    let point_grid = RadialGrid::log(2e-5, 40.0, 1200);
    let vc = |r: f64| -0.5 / r;
    let coarse = solve_channel(&vc, -1, &point_grid, 1.0)?;
    let mut fine_pc = point_grid;
    fine_pc.n_points *= 2;
    let fine = solve_channel(&vc, -1, &fine_pc, 1.0)?;
    let ground =
        (4.0 * first_gap_energies(&fine, 1)?[0] - first_gap_energies(&coarse, 1)?[0]) / 3.0;
    let analytic = coulomb_dirac_energy(0, -1, 0.5)?;
    let point_gap = (ground - analytic).abs();
    let passed = min_margin >= 0.0 && min_gap_value > 0.0 && point_gap <= 1e-6;
    Ok((
        passed,
        format!(
            "{levels} gaussian levels all above their point-Coulomb counterparts: \
             min margin {min_margin:.3e} at {min_margin_at}; min gap eigenvalue \
             {min_gap_value:.6} (must be > 0); point-Coulomb ground state off by \
             {point_gap:.3e} after extrapolation (tolerance 1e-6)"
        ),
    ))
}

fn contour_formula(_: &VerifyPaths) -> Result<(bool, String)> {
    let t0 = Instant::now();
    let grid = RadialGrid::uniform(40.0, 800);
    let model = NuclearModel::gaussian(1.0, 1.0);
    let v = move |r: f64| -0.5 * model.potential(r).expect("gaussian potential, r > 0");
    let free = OperatorMatrix::free(-1, &grid, 1.0)?;
    let pert = OperatorMatrix::with_potential(
        -1,
        &grid,
        1.0,
        v,
        "gaussian charge, coupling 0.5",
    )?;
    let spectral = ProjectorPair::build(&free, &pert)?;
    let contour = q_contour(&free, &pert, &EtaQuadrature::default())?;
    let rel = (&contour.q - &spectral.q).norm() / spectral.q.norm();
    let seconds = t0.elapsed().as_secs_f64();
    let passed = rel <= 1e-6 && seconds <= 60.0;
    Ok((
        passed,
        format!(
            "800-node kappa = -1 at coupling 0.5: |Q_contour - Q_spectral|_F relative \
             {rel:.3e} with {} eta nodes in {seconds:.1}s (tolerances 1e-6, 60s)",
            contour.nodes_used
        ),
    ))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MomentaFile {
    seed: u64,
    provenance: String,
    pairs: Vec<[Vec3; 2]>,
    triples: Vec<[Vec3; 3]>,
}

fn load_momenta(path: &Path) -> Result<MomentaFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    let file: MomentaFile = serde_json::from_str(&text)
        .map_err(|e| Error::Domain(format!("bad momenta file {}: {e}", path.display())))?;
    if file.pairs.len() < 20 || file.triples.len() < 10 {
        return Err(Error::Domain(format!(
            "momenta file needs >= 20 pairs and >= 10 triples, found {} and {} \
             (seed {}, {})",
            file.pairs.len(),
            file.triples.len(),
            file.seed,
            file.provenance
        )));
    }
    Ok(file)
}

fn q1_kernel(paths: &VerifyPaths) -> Result<(bool, String)> {
    let momenta = load_momenta(&paths.momenta)?;
    let model = NuclearModel::gaussian(1.0, 1.0);
    let mut worst = 0.0f64;
    let mut worst_im = 0.0f64;
    for [p, q] in momenta.pairs.iter().take(20) {
        let closed = q1_trace_kernel(*p, *q, &model)?;
        let quad = q1_trace_kernel_quadrature(*p, *q, &model, 600)?;
        worst = worst.max((quad.re - closed).abs() / closed.abs());
        worst_im = worst_im.max(quad.im.abs() / closed.abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(momenta.seed);
    let mut diag_worst = 0.0f64;
    for _ in 0..50 {
        let p: Vec3 = [
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
        ];
        diag_worst = diag_worst.max(q1_trace_kernel(p, p, &model)?.abs());
    }
    let passed = worst <= 1e-8 && diag_worst == 0.0;
    Ok((
        passed,
        format!(
            "closed form vs 600-node matrix quadrature on 20 seeded pairs: worst relative \
             gap {worst:.3e} (tolerance 1e-8), residual imaginary part {worst_im:.3e}; \
             diagonal kernel on 50 seeded momenta: max |value| = {diag_worst:.1e} \
             (exact zero required)"
        ),
    ))
}

fn q2_cancellation(paths: &VerifyPaths) -> Result<(bool, String)> {
    let momenta = load_momenta(&paths.momenta)?;
    let model = NuclearModel::gaussian(1.0, 1.0);
    let mut worst_ratio = 0.0f64;
    for [p, p1, q] in momenta.triples.iter().take(10) {
        let c = q2_density_cancellation(*p, *p1, *q, Some(&model), 64)?;
        if c.half_grid_control.abs() == 0.0 {
            return Ok((false, "degenerate control: half-grid sum vanished".into()));
        }
        worst_ratio = worst_ratio.max(c.symmetric_residual.abs() / c.half_grid_control.abs());
    }
    Ok((
        worst_ratio <= 1e-6,
        format!(
            "symmetric-grid residual vs half-grid control on 10 seeded triples: worst \
             ratio {worst_ratio:.3e} (tolerance 1e-6)"
        ),
    ))
}

fn log_divergence(_: &VerifyPaths) -> Result<(bool, String)> {
    let model = NuclearModel::gaussian(1.0, 1.0);
    let cutoffs = log_spaced(1e2, 1e4, 12);
    let study = diagonal_divergence_study(&model, 1.0, &cutoffs)?;
    Ok((
        study.r_squared >= 0.999,
        format!(
            "truncated coincident-point integral over 12 cutoffs in [1e2, 1e4]: affine \
             in log cutoff with R^2 = {:.6} (tolerance 0.999); fitted slope {:.6e} vs \
             analytic {:.6e}",
            study.r_squared, study.fitted_slope, study.predicted_slope
        ),
    ))
}

fn golden_regression(paths: &VerifyPaths) -> Result<(bool, String)> {
    let checks = golden::check_dir(&paths.golden_dir)?;
    let failed: Vec<&golden::GoldenCheck> = checks.iter().filter(|c| !c.ok).collect();
    if failed.is_empty() {
        let worst = checks
            .iter()
            .max_by(|a, b| a.rel.total_cmp(&b.rel))
            .expect("golden directories are never empty");
        Ok((
            true,
            format!(
                "{} entries recomputed within tolerance; worst relative drift {:.3e} \
                 ({} at x = {:.6e})",
                checks.len(),
                worst.rel,
                worst.file,
                worst.x
            ),
        ))
    } else {
        let first = failed[0];
        Ok((
            false,
            format!(
                "{} of {} entries drifted; first: {} at x = {:.6e} expected {:.17e} got \
                 {:.17e} (rel {:.3e}, tol {:.1e})",
                failed.len(),
                checks.len(),
                first.file,
                first.x,
                first.want,
                first.got,
                first.rel,
                first.tol
            ),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects_and_rejects() {
        assert!(run(Some("definitely-not-a-criterion"), &VerifyPaths::default()).is_err());
        let ids = criterion_ids();
        assert_eq!(ids.len(), 15);
        assert!(ids.contains(&"c-dual-form") && ids.contains(&"golden-regression"));
    }

    #[test]
    fn fast_kernel_criteria_pass() {
        let paths = VerifyPaths::default();
        for id in ["c-dual-form", "c-small-k", "c-large-k", "route-identity"] {
            let results = run(Some(id), &paths).unwrap();
            assert_eq!(results.len(), 1);
            assert!(results[0].passed, "{}", results[0].line());
        }
    }

    #[test]
    fn far_field_criterion_fails_for_the_documented_reason() {
        // the leading-order tail misses by 29/(16r) at r = 10, far outside
        // the 10% band, so an honest evaluation cannot pass this check;
        // assert the failure is exactly that, not some regression
        let results = run(Some("uehling-large-r"), &VerifyPaths::default()).unwrap();
        assert!(!results[0].passed);
        assert!(results[0].details.contains("0.85"), "{}", results[0].details);
        assert!(results[0].details.contains("-29/(16r)"), "{}", results[0].details);
    }

    #[test]
    fn momenta_file_loads() {
        let m = load_momenta(&VerifyPaths::default().momenta).unwrap();
        assert_eq!(m.pairs.len(), 20);
        assert_eq!(m.triples.len(), 10);
        assert!(m.seed > 0);
    }
}
