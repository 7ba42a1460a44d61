//! Radial grids for the boxed Dirac problem and sampled radial tables.
//!
//! Grids are staggered: the large component lives on the nodes, the small
//! component on the interval midpoints. With the box condition at `r_max`
//! and regularity at the origin both spinor slots count `n_points - 1`
//! values, so every channel matrix has even dimension `2(n_points - 1)`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Node placement scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    /// Equal steps on [0, r_max].
    Uniform,
    /// Equal steps in ln r on [r_min, r_max]; resolves the Coulomb
    /// singularity at the price of a hard wall at r_min.
    Log { r_min: f64 },
}

/// Discretization request for a radial channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialGrid {
    pub r_max: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl RadialGrid {
    pub fn uniform(r_max: f64, n_points: usize) -> Self {
        RadialGrid { r_max, n_points, spacing: Spacing::Uniform }
    }

    pub fn log(r_min: f64, r_max: f64, n_points: usize) -> Self {
        RadialGrid { r_max, n_points, spacing: Spacing::Log { r_min } }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_max.is_finite() && self.r_max > 0.0) {
            return Err(Error::Domain(format!("grid r_max must be positive, got {}", self.r_max)));
        }
        if self.n_points < 64 {
            return Err(Error::Domain(format!(
                "grid needs at least 64 points, got {}",
                self.n_points
            )));
        }
        if let Spacing::Log { r_min } = self.spacing {
            if !(r_min.is_finite() && r_min > 0.0 && r_min < self.r_max) {
                return Err(Error::Domain(format!(
                    "log grid needs 0 < r_min < r_max, got r_min = {r_min}, r_max = {}",
                    self.r_max
                )));
            }
        }
        Ok(())
    }

    /// Step in the grid coordinate (r for uniform, ln r for log).
    pub fn step(&self) -> f64 {
        match self.spacing {
            Spacing::Uniform => self.r_max / self.n_points as f64,
            Spacing::Log { r_min } => (self.r_max / r_min).ln() / self.n_points as f64,
        }
    }

    fn coord_origin(&self) -> f64 {
        match self.spacing {
            Spacing::Uniform => 0.0,
            Spacing::Log { r_min } => r_min.ln(),
        }
    }

    fn to_radius(&self, coord: f64) -> f64 {
        match self.spacing {
            Spacing::Uniform => coord,
            Spacing::Log { .. } => coord.exp(),
        }
    }

    /// Radii carrying the large component: interior nodes i = 1..n_points.
    pub fn fnodes(&self) -> Vec<f64> {
        let h = self.step();
        let x0 = self.coord_origin();
        (1..self.n_points).map(|i| self.to_radius(x0 + i as f64 * h)).collect()
    }

    /// Radii carrying the small component: midpoints of the first
    /// n_points - 1 intervals (the last midpoint is dropped with the box
    /// condition so both components count the same).
    pub fn midpoints(&self) -> Vec<f64> {
        let h = self.step();
        let x0 = self.coord_origin();
        (0..self.n_points - 1)
            .map(|i| self.to_radius(x0 + (i as f64 + 0.5) * h))
            .collect()
    }

    /// Quadrature weights in L²(dr) for samples on `fnodes`.
    pub fn fweights(&self) -> Vec<f64> {
        let h = self.step();
        match self.spacing {
            Spacing::Uniform => vec![h; self.n_points - 1],
            Spacing::Log { .. } => self.fnodes().iter().map(|r| h * r).collect(),
        }
    }

    /// Quadrature weights in L²(dr) for samples on `midpoints`.
    pub fn midweights(&self) -> Vec<f64> {
        let h = self.step();
        match self.spacing {
            Spacing::Uniform => vec![h; self.n_points - 1],
            Spacing::Log { .. } => self.midpoints().iter().map(|r| h * r).collect(),
        }
    }
}

/// Sampled radial function with per-point error estimates and a record of
/// which formula and quadrature produced it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialTable {
    pub r_values: Vec<f64>,
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub meta: String,
}

impl RadialTable {
    pub fn new(r_values: Vec<f64>, values: Vec<f64>, errors: Vec<f64>, meta: impl Into<String>) -> Result<Self> {
        let t = RadialTable { r_values, values, errors, meta: meta.into() };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.len() != self.r_values.len() || self.errors.len() != self.r_values.len() {
            return Err(Error::InvariantViolation(format!(
                "table column lengths differ: {} radii, {} values, {} errors",
                self.r_values.len(),
                self.values.len(),
                self.errors.len()
            )));
        }
        if self.r_values.is_empty() {
            return Err(Error::InvariantViolation("empty radial table".into()));
        }
        let mut prev = 0.0f64;
        for (i, &r) in self.r_values.iter().enumerate() {
            if !(r.is_finite() && r > prev) {
                return Err(Error::InvariantViolation(format!(
                    "radii must be positive and strictly increasing (index {i}, r = {r})"
                )));
            }
            prev = r;
        }
        if let Some(v) = self.values.iter().chain(self.errors.iter()).find(|v| !v.is_finite()) {
            return Err(Error::InvariantViolation(format!("non-finite table entry {v}")));
        }
        Ok(())
    }

    /// CSV rendering with 17 significant digits per entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,value,abs_error_estimate\n");
        for i in 0..self.r_values.len() {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e}\n",
                self.r_values[i], self.values[i], self.errors[i]
            ));
        }
        out
    }

    /// Monotone-cubic value at `r`; requires `r` inside the tabulated range.
    pub fn interpolate(&self, r: f64) -> Result<f64> {
        let (lo, hi) = (self.r_values[0], *self.r_values.last().unwrap());
        if !(r >= lo && r <= hi) {
            return Err(Error::Coverage(format!(
                "r = {r} outside tabulated range [{lo}, {hi}]"
            )));
        }
        Ok(pchip_eval(&self.r_values, &self.values, r))
    }
}

/// Shape-preserving cubic Hermite interpolation (Fritsch–Carlson slopes):
/// no overshoot near jumps, exact on linear data, O(h³) on smooth data.
pub fn pchip_eval(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    assert!(n >= 2 && ys.len() == n, "pchip needs at least two matched points");
    // bracketing interval by binary search
    let j = match xs.binary_search_by(|v| v.total_cmp(&x)) {
        Ok(i) => return ys[i],
        Err(0) => 0,
        Err(i) if i >= n => n - 2,
        Err(i) => i - 1,
    };
    let (m_j, m_j1) = pchip_slopes_at(xs, ys, j);
    let h = xs[j + 1] - xs[j];
    let t = (x - xs[j]) / h;
    let (t2, t3) = (t * t, t * t * t);
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    h00 * ys[j] + h * h10 * m_j + h01 * ys[j + 1] + h * h11 * m_j1
}

/// Derivative estimates at the two ends of interval j.
fn pchip_slopes_at(xs: &[f64], ys: &[f64], j: usize) -> (f64, f64) {
    let n = xs.len();
    let slope = |i: usize| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    let node = |i: usize| -> f64 {
        if i == 0 {
            endpoint_slope(xs[1] - xs[0], xs[2.min(n - 1)] - xs[1.min(n - 2)], slope(0), slope(1.min(n - 2)))
        } else if i == n - 1 {
            let d0 = slope(n - 2);
            let d1 = slope(n.saturating_sub(3).min(n - 2));
            endpoint_slope(xs[n - 1] - xs[n - 2], xs[n - 2] - xs[n.saturating_sub(3)], d0, d1)
        } else {
            let (d0, d1) = (slope(i - 1), slope(i));
            if d0 * d1 <= 0.0 {
                0.0
            } else {
                let (h0, h1) = (xs[i] - xs[i - 1], xs[i + 1] - xs[i]);
                let (w1, w2) = (2.0 * h1 + h0, h1 + 2.0 * h0);
                (w1 + w2) / (w1 / d0 + w2 / d1)
            }
        }
    };
    (node(j), node(j + 1))
}

/// One-sided three-point endpoint derivative, clamped for shape preservation.
fn endpoint_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}
