//! Vacuum-polarization numerics in natural units (ħ = c = mₑ = 1).
//!
//! The library computes the leading-order response of the Dirac sea to an
//! external nuclear charge: the polarization kernel C(k), the induced vacuum
//! charge density, the Uehling potential in momentum and position space, the
//! resulting first-order shifts of hydrogenic levels, and per-channel radial
//! Dirac spectra for extended and point nuclei. A small "spectral lab"
//! verifies the projector calculus (spectral vs. contour-integral
//! construction of the vacuum polarization operator Q, trace kernels,
//! parity cancellations) on discretized operators of desk scale.
//!
//! Everything is deterministic: fixed quadrature orders, no threading inside
//! operations, no global state. All physical inputs are threaded through an
//! explicit [`Constants`] value.

pub mod banded;
pub mod constants;
pub mod dirac;
pub mod fourier;
pub mod golden;
pub mod grid;
pub mod kernel;
pub mod nuclear;
pub mod quad;
pub mod shift;
pub mod spectral;
pub mod tridiag;
pub mod verify;

mod error;

pub use constants::Constants;
pub use error::{Error, Result};
pub use grid::{RadialGrid, RadialTable, Spacing};
pub use nuclear::{ModelDescriptor, ModelKind, NuclearModel};


