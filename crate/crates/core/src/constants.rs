//! Unit systems and the physical constants every formula consumes.
//!
//! Electrostatics follow the Gaussian convention: the Coulomb energy of an
//! electron at distance `r` from a nucleus of charge `Z` is `-Z e^2 / r`, and
//! only the combination `e^2` is ever stored.
//!
//! Constants files are plain UTF-8 text, one `name = value # unit` entry per
//! line. Recognised names are `hbar`, `mass_electron`, `e_squared` and
//! `speed_of_light`; anything else is rejected.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Bundled SI constants file.
pub const SI_CONSTANTS_FILE: &str = include_str!("../data/si_constants.txt");

/// Speed of light in atomic units, i.e. the inverse fine-structure constant.
pub const ATOMIC_SPEED_OF_LIGHT: f64 = 137.035999;

/// One electronvolt in joules (exact in the 2019 SI).
pub const ELECTRON_VOLT_J: f64 = 1.602_176_634e-19;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass_electron: f64,
    /// Gaussian `e^2`, so that `V = -Z e^2 / r`.
    pub e_squared: f64,
    pub speed_of_light: f64,
    /// `2 pi hbar`, stored for convenience.
    pub planck_h: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystemKind {
    Atomic,
    Si,
    Custom,
}

impl FromStr for UnitSystemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "atomic" => Ok(UnitSystemKind::Atomic),
            "si" => Ok(UnitSystemKind::Si),
            "custom" => Ok(UnitSystemKind::Custom),
            other => Err(Error::validation("unit system", format!("unknown kind `{other}`"))),
        }
    }
}

/// A possibly partial set of constants, as read from a constants file or
/// supplied by a caller.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ConstantsRecord {
    pub hbar: Option<f64>,
    pub mass_electron: Option<f64>,
    pub e_squared: Option<f64>,
    pub speed_of_light: Option<f64>,
}

impl ConstantsRecord {
    pub fn full(hbar: f64, mass_electron: f64, e_squared: f64, speed_of_light: f64) -> Self {
        ConstantsRecord {
            hbar: Some(hbar),
            mass_electron: Some(mass_electron),
            e_squared: Some(e_squared),
            speed_of_light: Some(speed_of_light),
        }
    }

    fn entries(&self) -> [(&'static str, Option<f64>); 4] {
        [
            ("hbar", self.hbar),
            ("mass_electron", self.mass_electron),
            ("e_squared", self.e_squared),
            ("speed_of_light", self.speed_of_light),
        ]
    }

    fn validate(&self) -> Result<()> {
        for (name, value) in self.entries() {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::validation(name, format!("must be finite and positive, got {v}")));
                }
            }
        }
        Ok(())
    }

    /// Fields of `self` replace those of `base` where present.
    fn apply_to(&self, base: PhysicalConstants) -> PhysicalConstants {
        PhysicalConstants::from_parts(
            self.hbar.unwrap_or(base.hbar),
            self.mass_electron.unwrap_or(base.mass_electron),
            self.e_squared.unwrap_or(base.e_squared),
            self.speed_of_light.unwrap_or(base.speed_of_light),
        )
    }

    /// Parses the `name = value # unit` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut record = ConstantsRecord::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, value) = line
                .split_once('=')
                .ok_or_else(|| Error::ConstantsFile(format!("line {line_no}: expected `name = value`")))?;
            let name = name.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::ConstantsFile(format!("line {line_no}: `{}` is not a number", value.trim())))?;
            let slot = match name {
                "hbar" => &mut record.hbar,
                "mass_electron" => &mut record.mass_electron,
                "e_squared" => &mut record.e_squared,
                "speed_of_light" => &mut record.speed_of_light,
                other => {
                    return Err(Error::ConstantsFile(format!("line {line_no}: unknown key `{other}`")));
                }
            };
            if slot.is_some() {
                return Err(Error::ConstantsFile(format!("line {line_no}: duplicate key `{name}`")));
            }
            *slot = Some(value);
        }
        Ok(record)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConstantsFile(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Renders the record back into the file format. Missing fields are skipped.
    pub fn to_file_string(&self) -> String {
        let units = ["J s", "kg", "J m", "m / s"];
        let mut out = String::new();
        for ((name, value), unit) in self.entries().into_iter().zip(units) {
            if let Some(v) = value {
                out.push_str(&format!("{name} = {v:e} # {unit}\n"));
            }
        }
        out
    }
}

impl PhysicalConstants {
    fn from_parts(hbar: f64, mass_electron: f64, e_squared: f64, speed_of_light: f64) -> Self {
        PhysicalConstants {
            hbar,
            mass_electron,
            e_squared,
            speed_of_light,
            planck_h: 2.0 * PI * hbar,
        }
    }

    /// Hartree atomic units: `hbar = m = e^2 = 1`.
    pub fn atomic() -> Self {
        Self::from_parts(1.0, 1.0, 1.0, ATOMIC_SPEED_OF_LIGHT)
    }

    /// SI values from the bundled constants file.
    pub fn si() -> Self {
        let record = ConstantsRecord::parse(SI_CONSTANTS_FILE).expect("bundled constants file is valid");
        Self::from_record(&record).expect("bundled constants file is complete")
    }

    /// Builds constants from a record that must contain every field.
    pub fn from_record(record: &ConstantsRecord) -> Result<Self> {
        record.validate()?;
        let need = |name: &'static str, v: Option<f64>| {
            v.ok_or_else(|| Error::validation(name, "missing from custom constants record"))
        };
        Ok(Self::from_parts(
            need("hbar", record.hbar)?,
            need("mass_electron", record.mass_electron)?,
            need("e_squared", record.e_squared)?,
            need("speed_of_light", record.speed_of_light)?,
        ))
    }

    pub fn to_record(&self) -> ConstantsRecord {
        ConstantsRecord::full(self.hbar, self.mass_electron, self.e_squared, self.speed_of_light)
    }

    pub fn fine_structure_constant(&self) -> f64 {
        fine_structure_constant(self)
    }
}

impl fmt::Display for PhysicalConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hbar={:e} m={:e} e^2={:e} c={:e}",
            self.hbar, self.mass_electron, self.e_squared, self.speed_of_light
        )
    }
}

/// Builds the constants for a unit system, optionally overriding individual
/// values. `Custom` requires the override record to be complete.
pub fn make_unit_system(kind: UnitSystemKind, overrides: Option<&ConstantsRecord>) -> Result<PhysicalConstants> {
    if let Some(o) = overrides {
        o.validate()?;
    }
    match kind {
        UnitSystemKind::Atomic => Ok(overrides.map_or(PhysicalConstants::atomic(), |o| o.apply_to(PhysicalConstants::atomic()))),
        UnitSystemKind::Si => Ok(overrides.map_or(PhysicalConstants::si(), |o| o.apply_to(PhysicalConstants::si()))),
        UnitSystemKind::Custom => {
            let record = overrides.ok_or_else(|| Error::validation("custom", "a full constants record is required"))?;
            PhysicalConstants::from_record(record)
        }
    }
}

/// `alpha = e^2 / (hbar c)`.
pub fn fine_structure_constant(c: &PhysicalConstants) -> f64 {
    c.e_squared / (c.hbar * c.speed_of_light)
}

/// Atomic-unit scales expressed in the units of `si` (normally SI).
///
/// Computation happens in atomic units; these factors convert results for
/// presentation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicScales {
    pub energy: f64,
    pub length: f64,
    pub time: f64,
    pub action: f64,
}

impl AtomicScales {
    pub fn from_constants(si: &PhysicalConstants) -> Self {
        let energy = si.mass_electron * si.e_squared * si.e_squared / (si.hbar * si.hbar);
        AtomicScales {
            energy,
            length: si.hbar * si.hbar / (si.mass_electron * si.e_squared),
            time: si.hbar / energy,
            action: si.hbar,
        }
    }
}
