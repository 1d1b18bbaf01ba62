//! Contour evaluation of the radial action.
//!
//! The cut integral
//! `I = 2 int_{r_min}^{r_max} sqrt((1/r_min - 1/r)(1/r - 1/r_max)) dr`
//! equals `-2 pi i (Res_inf f + Res_0 f)` for the branch function
//!
//! ```text
//! f(z) = i exp(i (phi_min + phi_max) / 2) sqrt(|z - r_min| |z - r_max|) / (z sqrt(r_min r_max))
//! ```
//!
//! where `phi_min`, `phi_max` are the phases of `z - r_min` and `z - r_max`
//! taken in `[0, 2 pi)`. Each factor is cut along the positive real axis from
//! its branch point; beyond `r_max` both phases jump by `2 pi` together, so
//! only the segment `[r_min, r_max]` remains a cut. The radial action is
//! `J_r = L I`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::actions::{ActionMethod, ActionResult};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::orbit::turning_points;

/// Default number of trapezoid nodes on each circle.
pub const DEFAULT_NODES: usize = 256;

/// Orbits with eccentricity at or below this have no usable cut.
pub const DEGENERATE_ECCENTRICITY: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchFunctionSpec {
    r_min: f64,
    r_max: f64,
}

impl BranchFunctionSpec {
    pub fn new(r_min: f64, r_max: f64) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite() && r_min > 0.0 && r_min < r_max) {
            return Err(Error::Domain(format!(
                "branch cut needs 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        Ok(BranchFunctionSpec { r_min, r_max })
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// `(r_min + r_max) / (2 sqrt(r_min r_max))`.
    pub fn mean_ratio(&self) -> f64 {
        (self.r_min + self.r_max) / (2.0 * (self.r_min * self.r_max).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueMode {
    Numeric,
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueReport {
    pub res_zero: Complex64,
    pub res_infinity: Complex64,
    pub cut_integral: f64,
    pub method: ResidueMode,
}

/// Contour radii for the numeric residues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourOptions {
    pub n_points: usize,
    /// Circle around the origin has radius `zero_fraction * r_min`.
    pub zero_fraction: f64,
    /// Circle around `w = 0` has radius `1 / (infinity_factor * r_max)`.
    pub infinity_factor: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        ContourOptions {
            n_points: DEFAULT_NODES,
            zero_fraction: 0.5,
            infinity_factor: 10.0,
        }
    }
}

fn phase(z: Complex64) -> f64 {
    let p = z.im.atan2(z.re);
    if p < 0.0 {
        p + 2.0 * PI
    } else {
        p
    }
}

pub fn branch_f(z: Complex64, spec: &BranchFunctionSpec) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("branch function is singular at z = 0".into()));
    }
    if z.im == 0.0 && z.re >= spec.r_min && z.re <= spec.r_max {
        return Err(Error::Domain(format!("z = {z} lies on the branch cut")));
    }
    Ok(branch_f_unchecked(z, spec))
}

fn branch_f_unchecked(z: Complex64, spec: &BranchFunctionSpec) -> Complex64 {
    let d_min = z - spec.r_min;
    let d_max = z - spec.r_max;
    let half_phase = 0.5 * (phase(d_min) + phase(d_max));
    let modulus = (d_min.norm() * d_max.norm()).sqrt();
    Complex64::i() * Complex64::from_polar(1.0, half_phase) * modulus / (z * (spec.r_min * spec.r_max).sqrt())
}

/// Real-axis limit of `|f|` inside the cut:
/// `sqrt((1/r_min - 1/r)(1/r - 1/r_max))`.
pub fn cut_magnitude(r: f64, spec: &BranchFunctionSpec) -> f64 {
    ((1.0 / spec.r_min - 1.0 / r) * (1.0 / r - 1.0 / spec.r_max)).max(0.0).sqrt()
}

fn check_nodes(n_points: usize) -> Result<()> {
    if n_points < 64 {
        return Err(Error::validation("n_points", format!("at least 64 nodes required, got {n_points}")));
    }
    Ok(())
}

/// `(1/2 pi i) oint f dz` on `|z| = radius`, trapezoid rule.
pub fn residue_at_zero_on_circle(spec: &BranchFunctionSpec, n_points: usize, radius: f64) -> Result<Complex64> {
    check_nodes(n_points)?;
    if !(radius > 0.0 && radius < spec.r_min) {
        return Err(Error::Domain(format!("zero-residue circle radius {radius} must lie in (0, r_min)")));
    }
    let n = n_points as f64;
    // dz = i z dtheta, so (1/2 pi i) oint f dz = mean of f(z_k) z_k.
    let sum: Complex64 = (0..n_points)
        .map(|k| {
            let z = Complex64::from_polar(radius, 2.0 * PI * k as f64 / n);
            branch_f_unchecked(z, spec) * z
        })
        .sum();
    Ok(sum / n)
}

pub fn residue_at_zero_numeric(spec: &BranchFunctionSpec, n_points: usize) -> Result<Complex64> {
    residue_at_zero_on_circle(spec, n_points, 0.5 * spec.r_min)
}

/// `Res_{w=0}[-(1/w^2) f(1/w)]` on `|w| = radius`, trapezoid rule.
pub fn residue_at_infinity_on_circle(spec: &BranchFunctionSpec, n_points: usize, radius: f64) -> Result<Complex64> {
    check_nodes(n_points)?;
    if !(radius > 0.0 && radius < 1.0 / spec.r_max) {
        return Err(Error::Domain(format!(
            "infinity-residue circle radius {radius} must lie in (0, 1/r_max)"
        )));
    }
    let n = n_points as f64;
    // dw = i w dtheta: mean of -f(1/w_k) / w_k.
    let sum: Complex64 = (0..n_points)
        .map(|k| {
            let w = Complex64::from_polar(radius, 2.0 * PI * k as f64 / n);
            -branch_f_unchecked(w.inv(), spec) / w
        })
        .sum();
    Ok(sum / n)
}

pub fn residue_at_infinity_numeric(spec: &BranchFunctionSpec, n_points: usize) -> Result<Complex64> {
    residue_at_infinity_on_circle(spec, n_points, 1.0 / (10.0 * spec.r_max))
}

pub fn analytic_residue_at_zero() -> Complex64 {
    Complex64::new(0.0, -1.0)
}

pub fn analytic_residue_at_infinity(spec: &BranchFunctionSpec) -> Complex64 {
    Complex64::new(0.0, spec.mean_ratio())
}

pub fn cut_integral(spec: &BranchFunctionSpec, mode: ResidueMode) -> Result<ResidueReport> {
    cut_integral_with(spec, mode, &ContourOptions::default())
}

pub fn cut_integral_with(spec: &BranchFunctionSpec, mode: ResidueMode, opts: &ContourOptions) -> Result<ResidueReport> {
    match mode {
        ResidueMode::Analytic => {
            // (r_min + r_max)/(2 sqrt(r_min r_max)) - 1 = (sqrt(r_max) - sqrt(r_min))^2 / (2 sqrt(r_min r_max))
            let gap = spec.r_max.sqrt() - spec.r_min.sqrt();
            let excess = gap * gap / (2.0 * (spec.r_min * spec.r_max).sqrt());
            Ok(ResidueReport {
                res_zero: analytic_residue_at_zero(),
                res_infinity: analytic_residue_at_infinity(spec),
                cut_integral: 2.0 * PI * excess,
                method: mode,
            })
        }
        ResidueMode::Numeric => {
            let res_zero = residue_at_zero_on_circle(spec, opts.n_points, opts.zero_fraction * spec.r_min)?;
            let res_infinity =
                residue_at_infinity_on_circle(spec, opts.n_points, 1.0 / (opts.infinity_factor * spec.r_max))?;
            let total = Complex64::new(0.0, -2.0 * PI) * (res_infinity + res_zero);
            Ok(ResidueReport {
                res_zero,
                res_infinity,
                cut_integral: total.re,
                method: mode,
            })
        }
    }
}

/// `J_r = L I` with `I` from the numeric residues.
pub fn radial_action_residue(e: f64, l: f64, z: u32, c: &PhysicalConstants) -> Result<ActionResult> {
    let (r_min, r_max) = turning_points(e, l, z, c)?;
    let eccentricity = (r_max - r_min) / (r_max + r_min);
    if eccentricity <= DEGENERATE_ECCENTRICITY {
        return Err(Error::DegenerateCut { eccentricity });
    }
    let spec = BranchFunctionSpec::new(r_min, r_max)?;
    let report = cut_integral(&spec, ResidueMode::Numeric)?;
    // Agreement of the numeric residues with their closed forms bounds the error.
    let drift = (report.res_zero - analytic_residue_at_zero()).norm()
        + (report.res_infinity - analytic_residue_at_infinity(&spec)).norm();
    Ok(ActionResult {
        value: l * report.cut_integral.max(0.0),
        method: ActionMethod::Residue,
        error_estimate: 2.0 * PI * l * drift,
    })
}
