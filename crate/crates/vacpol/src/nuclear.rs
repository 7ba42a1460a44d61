//! Spherically symmetric nuclear charge models: densities, form factors,
//! and the electrostatic potential φ = 1/|·| * n.
//!
//! Three kinds are supported. The gaussian is the canonical smooth profile
//! (Schwartz class, so every transform-side formula applies verbatim and its
//! Fourier tail is negligible beyond a few 1/a); the point charge feeds the
//! closed-form potential path; the uniform ball adds a physically motivated
//! hard-edge profile. Width parameters are in natural units — converting
//! from femtometers is the caller's job (see [`ModelDescriptor`]).

use crate::constants::Constants;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// (2π)^{-3/2}, the unitary-convention normalization of a unit point charge.
pub const FOURIER_POINT: f64 = 0.063_493_635_934_240_97;

/// √(2/π)
const SQRT_2_OVER_PI: f64 = crate::fourier::SQRT_2_OVER_PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Gaussian,
    Point,
    UniformBall,
}

impl ModelKind {
    /// Stable lower-case name, matching the serialized form.
    pub fn label(&self) -> &'static str {
        match self {
            ModelKind::Gaussian => "gaussian",
            ModelKind::Point => "point",
            ModelKind::UniformBall => "uniform_ball",
        }
    }
}

/// A nuclear charge distribution with total charge `z` (so ∫n = z exactly)
/// and length scale `width` (gaussian a, ball radius R; ignored for point).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NuclearModel {
    pub kind: ModelKind,
    pub z: f64,
    pub width: f64,
}

impl NuclearModel {
    pub fn gaussian(z: f64, a: f64) -> Self {
        NuclearModel { kind: ModelKind::Gaussian, z, width: a }
    }

    pub fn point(z: f64) -> Self {
        NuclearModel { kind: ModelKind::Point, z, width: 0.0 }
    }

    pub fn uniform_ball(z: f64, radius: f64) -> Self {
        NuclearModel { kind: ModelKind::UniformBall, z, width: radius }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z.is_finite() && self.z > 0.0) {
            return Err(Error::Domain(format!("nuclear charge must be positive, got {}", self.z)));
        }
        if self.kind != ModelKind::Point && !(self.width.is_finite() && self.width > 0.0) {
            return Err(Error::Domain(format!(
                "width must be positive for extended nuclei, got {}",
                self.width
            )));
        }
        Ok(())
    }

    /// Charge density n(r). Point charges have no pointwise density.
    pub fn density(&self, r: f64) -> Result<f64> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::Domain(format!("density needs r >= 0, got {r}")));
        }
        match self.kind {
            ModelKind::Point => Err(Error::Unsupported(
                "point nucleus has no pointwise density; use density_fourier or the potential".into(),
            )),
            ModelKind::Gaussian => {
                let a = self.width;
                let norm = (2.0 * std::f64::consts::PI * a * a).powf(1.5);
                Ok(self.z / norm * (-0.5 * r * r / (a * a)).exp())
            }
            ModelKind::UniformBall => {
                let rad = self.width;
                if r <= rad {
                    Ok(3.0 * self.z / (4.0 * std::f64::consts::PI * rad * rad * rad))
                } else {
                    Ok(0.0)
                }
            }
        }
    }

    /// n̂(k) in the unitary convention; every kind tends to (2π)^{-3/2} z
    /// as k → 0 (total charge).
    pub fn density_fourier(&self, k: f64) -> Result<f64> {
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::Domain(format!("density_fourier needs k >= 0, got {k}")));
        }
        let zhat = FOURIER_POINT * self.z;
        match self.kind {
            ModelKind::Point => Ok(zhat),
            ModelKind::Gaussian => {
                let ak = self.width * k;
                Ok(zhat * (-0.5 * ak * ak).exp())
            }
            ModelKind::UniformBall => Ok(zhat * ball_form_factor(k * self.width)),
        }
    }

    /// Electrostatic potential φ(r) ≥ 0 of the positive charge cloud.
    pub fn potential(&self, r: f64) -> Result<f64> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::Domain(format!("potential needs r >= 0, got {r}")));
        }
        match self.kind {
            ModelKind::Point => {
                if r == 0.0 {
                    Err(Error::Singularity("point potential diverges at r = 0".into()))
                } else {
                    Ok(self.z / r)
                }
            }
            ModelKind::Gaussian => {
                let a = self.width;
                if r == 0.0 {
                    Ok(self.z * SQRT_2_OVER_PI / a)
                } else {
                    Ok(self.z * libm::erf(r / (a * std::f64::consts::SQRT_2)) / r)
                }
            }
            ModelKind::UniformBall => {
                let rad = self.width;
                if r <= rad {
                    Ok(self.z * (3.0 * rad * rad - r * r) / (2.0 * rad * rad * rad))
                } else {
                    Ok(self.z / r)
                }
            }
        }
    }

    /// φ̂(k) = 4π n̂(k)/k², valid for k > 0 (the transform has a 1/k² pole
    /// carrying the long-range Coulomb tail).
    pub fn potential_fourier(&self, k: f64) -> Result<f64> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::Singularity(format!(
                "potential_fourier diverges as k → 0; needs k > 0, got {k}"
            )));
        }
        Ok(4.0 * std::f64::consts::PI * self.density_fourier(k)? / (k * k))
    }
}

/// 3(sin x − x cos x)/x³, the uniform-ball form factor; equals 1 at x = 0.
/// Below x = 0.5 the subtraction loses digits, so the Taylor series
/// 1 − x²/10 + x⁴/280 − … is summed instead.
pub fn ball_form_factor(x: f64) -> f64 {
    if x < 0.5 {
        let x2 = x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut m = 1.0f64;
        loop {
            // t_{m+1}/t_m = −x²·(m+1)/(m·(2m+2)(2m+3))
            term *= -x2 * (m + 1.0) / (m * (2.0 * m + 2.0) * (2.0 * m + 3.0));
            sum += term;
            m += 1.0;
            if term.abs() < 1e-17 {
                return sum;
            }
        }
    }
    3.0 * (x.sin() - x * x.cos()) / (x * x * x)
}

/// External JSON descriptor with the width in femtometers. This is the
/// interchange form for config files; conversion to natural units needs the
/// Compton length from [`Constants`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDescriptor {
    pub kind: ModelKind,
    #[serde(rename = "Z")]
    pub z: f64,
    #[serde(default)]
    pub width_fm: f64,
}

impl ModelDescriptor {
    pub fn to_model(&self, constants: &Constants) -> Result<NuclearModel> {
        let model = NuclearModel {
            kind: self.kind,
            z: self.z,
            width: constants.fm_to_natural(self.width_fm)?,
        };
        model.validate()?;
        Ok(model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{fourier_radial, halfline_decaying};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gaussian_density_at_origin() {
        let m = NuclearModel::gaussian(1.0, 1.0);
        assert_relative_eq!(m.density(0.0).unwrap(), FOURIER_POINT, max_relative = 1e-15);
    }

    #[test]
    fn ball_density_support() {
        let m = NuclearModel::uniform_ball(2.0, 1.0);
        assert_eq!(m.density(2.0).unwrap(), 0.0);
        let inside = 6.0 / (4.0 * std::f64::consts::PI);
        assert_relative_eq!(m.density(0.5).unwrap(), inside, max_relative = 1e-15);
    }

    #[test]
    fn point_has_no_density() {
        assert!(NuclearModel::point(1.0).density(1.0).is_err());
    }

    #[test]
    fn charge_normalization_by_quadrature() {
        for m in [
            NuclearModel::gaussian(1.0, 0.5),
            NuclearModel::gaussian(3.0, 2.0),
            NuclearModel::uniform_ball(2.0, 1.3),
        ] {
            let n = move |r: f64| 4.0 * std::f64::consts::PI * r * r * m.density(r).unwrap();
            let got = halfline_decaying(&n, 1e-12).unwrap();
            assert_relative_eq!(got.value, m.z, max_relative = 1e-10);
        }
    }

    #[test]
    fn form_factor_series_matches_closed_form() {
        // both branches near the switch point, and the x → 0 limit
        assert_relative_eq!(ball_form_factor(0.499), ball_form_factor_direct(0.499), max_relative = 1e-13);
        assert_relative_eq!(ball_form_factor(0.501), ball_form_factor_direct(0.501), max_relative = 1e-13);
        assert_relative_eq!(ball_form_factor(1e-8), 1.0, max_relative = 1e-15);
    }

    fn ball_form_factor_direct(x: f64) -> f64 {
        3.0 * (x.sin() - x * x.cos()) / (x * x * x)
    }

    #[test]
    fn density_fourier_total_charge_limit() {
        for m in [
            NuclearModel::gaussian(2.5, 1.0),
            NuclearModel::point(2.5),
            NuclearModel::uniform_ball(2.5, 0.7),
        ] {
            assert_relative_eq!(m.density_fourier(0.0).unwrap(), FOURIER_POINT * 2.5, max_relative = 1e-15);
        }
    }

    #[test]
    fn density_fourier_against_quadrature() {
        let m = NuclearModel::gaussian(1.0, 1.0);
        let got = m.density_fourier(1.0).unwrap();
        assert_relative_eq!(got, FOURIER_POINT * (-0.5f64).exp(), max_relative = 1e-15);
        let quad = fourier_radial(&|r| m.density(r).unwrap(), 1.0, 1e-11).unwrap();
        assert_relative_eq!(got, quad.value, max_relative = 1e-9);

        let b = NuclearModel::uniform_ball(2.0, 1.0);
        let quad = fourier_radial(&|r| b.density(r).unwrap(), 1.0, 1e-11).unwrap();
        assert_relative_eq!(b.density_fourier(1.0).unwrap(), quad.value, max_relative = 1e-9);
    }

    #[test]
    fn coulomb_potential_values() {
        let p = NuclearModel::point(1.0);
        assert_relative_eq!(p.potential(2.0).unwrap(), 0.5, max_relative = 1e-15);
        assert!(p.potential(0.0).is_err());
    }

    #[test]
    fn gaussian_potential_values() {
        let m = NuclearModel::gaussian(1.0, 1.0);
        // r = 1: erf(1/√2), the one-sigma probability mass
        assert_relative_eq!(m.potential(1.0).unwrap(), 0.682_689_492_137_085_9, max_relative = 1e-14);
        // origin limit
        assert_relative_eq!(m.potential(0.0).unwrap(), SQRT_2_OVER_PI, max_relative = 1e-15);
        // long range: all charge enclosed
        assert_relative_eq!(m.potential(10.0).unwrap(), 0.1, max_relative = 1e-12);
    }

    #[test]
    fn ball_potential_continuous_at_edge() {
        let m = NuclearModel::uniform_ball(3.0, 2.0);
        let eps = 1e-12;
        let inside = m.potential(2.0 - eps).unwrap();
        let outside = m.potential(2.0 + eps).unwrap();
        assert_relative_eq!(inside, outside, max_relative = 1e-10);
        assert_relative_eq!(m.potential(2.0).unwrap(), 1.5, max_relative = 1e-15);
        // center value 3Z/(2R)
        assert_relative_eq!(m.potential(0.0).unwrap(), 2.25, max_relative = 1e-15);
    }

    #[test]
    fn potential_fourier_point_normalization() {
        let p = NuclearModel::point(1.0);
        assert_relative_eq!(p.potential_fourier(1.0).unwrap(), SQRT_2_OVER_PI, max_relative = 1e-14);
        assert!(p.potential_fourier(0.0).is_err());
    }

    #[test]
    fn potential_fourier_matches_position_space_transform() {
        // 1e-8 agreement between the closed form and live quadrature of φ(r),
        // whose 1/r tail exercises the conditionally convergent path
        let m = NuclearModel::gaussian(1.0, 1.0);
        for &k in &[0.1, 1.0, 2.0, 7.0] {
            let closed = m.potential_fourier(k).unwrap();
            let quad = fourier_radial(&|r| m.potential(r).unwrap(), k, 1e-10).unwrap();
            assert_relative_eq!(quad.value, closed, max_relative = 1e-8);
        }
        // spot value: √(2/π) e^{-2} / 4
        assert_relative_eq!(
            m.potential_fourier(2.0).unwrap(),
            SQRT_2_OVER_PI * (-2.0f64).exp() / 4.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn newton_bound_on_random_radii() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e75636c);
        let models = [
            NuclearModel::gaussian(1.0, 1.0),
            NuclearModel::gaussian(40.0, 0.01),
            NuclearModel::uniform_ball(2.0, 1.0),
            NuclearModel::uniform_ball(80.0, 0.02),
        ];
        for _ in 0..1000 {
            let r: f64 = rng.random_range(1e-6..20.0);
            for m in &models {
                let phi = m.potential(r).unwrap();
                assert!(phi >= 0.0, "negative potential for {m:?} at r = {r}");
                assert!(phi <= m.z / r * (1.0 + 1e-14), "potential above Z/r for {m:?} at r = {r}");
            }
        }
    }

    #[test]
    fn descriptor_roundtrip_and_units() {
        let json = r#"{"kind": "gaussian", "Z": 1.0, "width_fm": 3.0}"#;
        let d: ModelDescriptor = serde_json::from_str(json).unwrap();
        let c = Constants::default();
        let m = d.to_model(&c).unwrap();
        assert_eq!(m.kind, ModelKind::Gaussian);
        assert_relative_eq!(m.width, 3.0 / 386.159_267_96, max_relative = 1e-12);

        // unknown keys are rejected
        let bad = r#"{"kind": "gaussian", "Z": 1.0, "width_fm": 3.0, "extra": 1}"#;
        assert!(serde_json::from_str::<ModelDescriptor>(bad).is_err());

        // kind names are snake_case
        let ball = r#"{"kind": "uniform_ball", "Z": 2.0, "width_fm": 5.0}"#;
        assert!(serde_json::from_str::<ModelDescriptor>(ball).is_ok());
    }

    #[test]
    fn validation_rejects_bad_models() {
        assert!(NuclearModel::gaussian(-1.0, 1.0).validate().is_err());
        assert!(NuclearModel::gaussian(1.0, 0.0).validate().is_err());
        assert!(NuclearModel::point(1.0).validate().is_ok());
    }
}
