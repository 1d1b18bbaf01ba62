//! Rydberg energy, Bohr radius, transition lines and named series.
//!
//! Wavelengths are vacuum wavelengths. No reduced-mass correction is applied;
//! override `mass_electron` to include one.

use std::fmt;
use std::str::FromStr;

use crate::constants::{fine_structure_constant, PhysicalConstants};
use crate::error::{Error, Result};
use crate::quantize::bohr_energy;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub n_upper: u32,
    pub n_lower: u32,
    pub delta_energy: f64,
    pub frequency: f64,
    pub wavelength: f64,
    pub z: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesName {
    Lyman,
    Balmer,
    Paschen,
    Brackett,
}

impl SeriesName {
    pub const ALL: [SeriesName; 4] = [SeriesName::Lyman, SeriesName::Balmer, SeriesName::Paschen, SeriesName::Brackett];

    /// Lower level shared by every line of the series.
    pub fn base_level(&self) -> u32 {
        match self {
            SeriesName::Lyman => 1,
            SeriesName::Balmer => 2,
            SeriesName::Paschen => 3,
            SeriesName::Brackett => 4,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SeriesName::Lyman => "lyman",
            SeriesName::Balmer => "balmer",
            SeriesName::Paschen => "paschen",
            SeriesName::Brackett => "brackett",
        }
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeriesName::ALL
            .into_iter()
            .find(|n| n.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::validation("series", format!("unknown series `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZLimit {
    Ok,
    /// `Z` is at or beyond `1 / alpha`.
    Warning { alpha_inverse: f64 },
}

/// `Z^2 m e^4 / (2 hbar^2)`.
pub fn rydberg_energy(z: u32, c: &PhysicalConstants) -> f64 {
    let zf = z as f64;
    zf * zf * c.mass_electron * c.e_squared * c.e_squared / (2.0 * c.hbar * c.hbar)
}

/// `hbar^2 / (Z m e^2)`.
pub fn bohr_radius(z: u32, c: &PhysicalConstants) -> f64 {
    c.hbar * c.hbar / (z as f64 * c.mass_electron * c.e_squared)
}

pub fn transition(n_upper: u32, n_lower: u32, z: u32, c: &PhysicalConstants) -> Result<SpectralLine> {
    if n_lower == 0 || n_upper <= n_lower {
        return Err(Error::Domain(format!(
            "transition needs n_upper > n_lower >= 1, got {n_upper} -> {n_lower}"
        )));
    }
    let delta_energy = bohr_energy(n_upper, z, c)? - bohr_energy(n_lower, z, c)?;
    let frequency = delta_energy / c.planck_h;
    Ok(SpectralLine {
        n_upper,
        n_lower,
        delta_energy,
        frequency,
        wavelength: c.speed_of_light / frequency,
        z,
    })
}

/// Lines `n -> base` for `n` in `(base, n_upper_max]`; empty when the range is empty.
pub fn series(name: SeriesName, n_upper_max: u32, z: u32, c: &PhysicalConstants) -> Result<Vec<SpectralLine>> {
    let base = name.base_level();
    (base + 1..=n_upper_max).map(|n| transition(n, base, z, c)).collect()
}

pub fn check_z_limit(z: u32, c: &PhysicalConstants) -> ZLimit {
    let alpha_inverse = 1.0 / fine_structure_constant(c);
    if z as f64 >= alpha_inverse {
        ZLimit::Warning { alpha_inverse }
    } else {
        ZLimit::Ok
    }
}
