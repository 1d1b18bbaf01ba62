//! Phase-space (Bohr-Sommerfeld) quantization of hydrogen-like atoms with
//! elliptical orbits.
//!
//! The radial action `oint p_r dr` is evaluated by several independent routes
//! (substitution quadrature, integration over the polar angle, time averaging,
//! contour residues, and closed form), and the quantization condition
//! `J_r = n_r h`, `2 pi L = n_theta h` is inverted for the energy levels.
//!
//! All formulas are written in Gaussian form with `e^2` as a single constant
//! and work in any consistent unit system; atomic units are the default.

pub mod actions;
pub mod cli;
pub mod constants;
pub mod error;
pub mod orbit;
pub mod quadrature;
pub mod quantize;
pub mod residue;
pub mod spectrum;
pub mod verify;

pub use actions::{ActionMethod, ActionResult};
pub use constants::{make_unit_system, PhysicalConstants, UnitSystemKind};
pub use error::{Error, Result};
pub use orbit::{OrbitGeometry, TimeSample};
pub use quantize::{EnergyLevel, QuantumNumbers};
pub use spectrum::SpectralLine;
