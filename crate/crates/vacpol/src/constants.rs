//! Unit system and physical constants.
//!
//! Natural units throughout: ħ = c = mₑ = 1. Energies are in units of
//! mₑc², lengths in electron Compton wavelengths ħ/(mₑc). One length unit
//! is 386.159 fm; conversions to femtometers go through the configured
//! `electron_compton_fm` so a config can pin its own CODATA vintage.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Fine-structure constant α (CODATA 2018).
pub const ALPHA_DEFAULT: f64 = 7.297_352_569_3e-3;

/// Electron (reduced) Compton wavelength in femtometers, ħ/(mₑc).
pub const ELECTRON_COMPTON_FM: f64 = 386.159_267_96;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Muon mass in electron masses.
pub const MUON_MASS_RATIO: f64 = 206.768_3;

/// Muon reduced mass in hydrogen (mₘ·Mₚ/(mₘ+Mₚ) with Mₚ = 1836.152 mₑ),
/// in electron masses. The heavy-lepton orbit sits deep inside the
/// electron-loop polarization cloud, which is what makes muonic shifts large.
pub const MUON_REDUCED_MASS_HYDROGEN: f64 = 185.840_796_717_1;

/// mₑc² in electron volts (interface convenience for reports).
pub const MEC2_EV: f64 = 510_998.95;

/// Immutable bundle of the physical constants a computation runs with.
/// One value is constructed up front and threaded explicitly through every
/// operation; nothing reads global state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Constants {
    /// Fine-structure constant, dimensionless, in (0, 1).
    pub alpha: f64,
    /// Mass of the orbiting particle in electron masses (1 for electrons).
    pub m_eff: f64,
    /// Length of one natural unit in femtometers.
    pub electron_compton_fm: f64,
    /// Euler–Mascheroni constant (fixed; appears in small-r potential laws).
    pub euler_gamma: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            alpha: ALPHA_DEFAULT,
            m_eff: 1.0,
            electron_compton_fm: ELECTRON_COMPTON_FM,
            euler_gamma: EULER_GAMMA,
        }
    }
}

impl Constants {
    /// Validated constructor: α ∈ (0,1), m_eff > 0.
    pub fn new(alpha: f64, m_eff: f64) -> Result<Self> {
        let c = Constants {
            alpha,
            m_eff,
            ..Constants::default()
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Domain(format!(
                "alpha = {} outside (0, 1)",
                self.alpha
            )));
        }
        if !(self.m_eff > 0.0) {
            return Err(Error::Domain(format!("m_eff = {} must be > 0", self.m_eff)));
        }
        if !(self.electron_compton_fm > 0.0) {
            return Err(Error::Domain(
                "electron_compton_fm must be > 0".to_string(),
            ));
        }
        Ok(())
    }

    /// Convert a length in femtometers to natural units.
    pub fn fm_to_natural(&self, length_fm: f64) -> Result<f64> {
        if length_fm < 0.0 {
            return Err(Error::Domain(format!(
                "length {} fm is negative",
                length_fm
            )));
        }
        Ok(length_fm / self.electron_compton_fm)
    }

    /// Convert an energy in natural units (mₑc²) to electron volts.
    pub fn natural_to_ev(&self, e_natural: f64) -> f64 {
        e_natural * MEC2_EV
    }
}
