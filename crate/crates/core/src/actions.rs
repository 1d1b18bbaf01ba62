//! Radial and angular phase integrals of a bound Coulomb orbit.
//!
//! The radial action `J_r = oint p_r dr` is available through several
//! independent routes:
//!
//! * [`radial_action_direct`]: the substitution
//!   `1/r = (1/r_min + 1/r_max)/2 + (1/r_min - 1/r_max)/2 * sin(v)`, which
//!   turns the square-root integrand into
//!   `2 L int_{-pi/2}^{pi/2} cos^2 v / (eps_p + sin v)^2 dv`;
//! * [`radial_action_theta`]: integration over the polar angle using the
//!   ellipse equation, `L int_0^{2 pi} (r'/r)^2 dtheta`;
//! * [`radial_action_time`]: the total action `int_0^T 2K dt` minus the
//!   angular part `2 pi L`;
//! * [`radial_action_closed`]: `2 pi (Z m e^2 / sqrt(-2 m E) - L)`;
//! * [`crate::residue::radial_action_residue`]: contour integration around
//!   the branch cut `[r_min, r_max]`.
//!
//! Two different "epsilon" quantities appear here. `epsilon_param` is the
//! integrand parameter of the direct route and always exceeds 1;
//! `eccentricity` is the ellipse shape parameter in `[0, 1)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::orbit::{ellipse_from_energy, turning_points, OrbitGeometry};
use crate::quadrature::integrate_adaptive;

/// Relative tolerance on the virial identity `<K> = -E`.
pub const VIRIAL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActionMethod {
    Direct,
    Theta,
    Time,
    Residue,
    Closed,
}

impl ActionMethod {
    pub const ALL: [ActionMethod; 5] = [
        ActionMethod::Direct,
        ActionMethod::Theta,
        ActionMethod::Time,
        ActionMethod::Residue,
        ActionMethod::Closed,
    ];

    /// The four quadrature/contour routes (everything except the closed form).
    pub const NUMERIC: [ActionMethod; 4] = [
        ActionMethod::Direct,
        ActionMethod::Theta,
        ActionMethod::Time,
        ActionMethod::Residue,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ActionMethod::Direct => "direct",
            ActionMethod::Theta => "theta",
            ActionMethod::Time => "time",
            ActionMethod::Residue => "residue",
            ActionMethod::Closed => "closed",
        }
    }
}

impl fmt::Display for ActionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ActionMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::validation("method", format!("unknown action method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionResult {
    pub value: f64,
    pub method: ActionMethod,
    pub error_estimate: f64,
}

impl ActionResult {
    fn exact(value: f64, method: ActionMethod) -> Self {
        ActionResult {
            value,
            method,
            error_estimate: 0.0,
        }
    }

    /// The action in units of Planck's constant.
    pub fn in_planck_units(&self, c: &PhysicalConstants) -> f64 {
        self.value / c.planck_h
    }
}

/// `oint p_theta dtheta = 2 pi L`.
pub fn angular_action(l: f64) -> Result<f64> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::Domain(format!("angular momentum must be positive, got {l}")));
    }
    Ok(2.0 * PI * l)
}

/// Integrand parameter of the direct route,
/// `(1/r_min + 1/r_max) / (1/r_min - 1/r_max)`. Infinite for circular orbits.
pub fn epsilon_param(r_min: f64, r_max: f64) -> f64 {
    let u_hi = 1.0 / r_min;
    let u_lo = 1.0 / r_max;
    (u_hi + u_lo) / (u_hi - u_lo)
}

pub fn radial_action_direct(e: f64, l: f64, z: u32, c: &PhysicalConstants, rel_tol: f64) -> Result<ActionResult> {
    let (r_min, r_max) = turning_points(e, l, z, c)?;
    if r_min == r_max {
        return Ok(ActionResult::exact(0.0, ActionMethod::Direct));
    }
    let eps = epsilon_param(r_min, r_max);
    let integrand = |v: f64| {
        let (s, co) = v.sin_cos();
        let d = eps + s;
        co * co / (d * d)
    };
    let q = integrate_adaptive(integrand, -PI / 2.0, PI / 2.0, rel_tol)?;
    Ok(ActionResult {
        value: 2.0 * l * q.value,
        method: ActionMethod::Direct,
        error_estimate: 2.0 * l * q.error_estimate,
    })
}

pub fn radial_action_theta(e: f64, l: f64, z: u32, c: &PhysicalConstants, rel_tol: f64) -> Result<ActionResult> {
    let g = ellipse_from_energy(e, l, z, c)?;
    if g.is_circular() || g.eccentricity == 0.0 {
        return Ok(ActionResult::exact(0.0, ActionMethod::Theta));
    }
    let ecc = g.eccentricity;
    // (1/r) dr/dtheta for r = a (1 - eps^2) / (1 + eps cos theta).
    let log_derivative = move |theta: f64| {
        let (s, co) = theta.sin_cos();
        ecc * s / (1.0 + ecc * co)
    };
    let integrand = |theta: f64| {
        let d = log_derivative(theta);
        d * d
    };
    // Split at apoapsis, where the integrand peaks for eccentric orbits.
    let first = integrate_adaptive(integrand, 0.0, PI, rel_tol)?;
    let second = integrate_adaptive(integrand, PI, 2.0 * PI, rel_tol)?;
    Ok(ActionResult {
        value: l * (first.value + second.value),
        method: ActionMethod::Theta,
        error_estimate: l * (first.error_estimate + second.error_estimate),
    })
}

/// Time average of the kinetic energy over one period, computed by
/// quadrature in the eccentric anomaly `u` with `dt = (T / 2 pi)(1 - eps cos u) du`.
///
/// Returns `(<K>, error estimate of int K dt)`.
pub fn time_average_kinetic(g: &OrbitGeometry, c: &PhysicalConstants, rel_tol: f64) -> Result<(f64, f64)> {
    let ecc = g.eccentricity;
    let a = g.semi_major;
    let m = c.mass_electron;
    let mean_motion = 2.0 * PI / g.period;
    let sqrt_one_minus = ((1.0 - ecc) * (1.0 + ecc)).sqrt();
    let kinetic_dt = |u: f64| {
        let (s, co) = u.sin_cos();
        let one_minus = 1.0 - ecc * co;
        let r = a * one_minus;
        let r_dot = a * ecc * s * mean_motion / one_minus;
        let theta_dot = mean_motion * sqrt_one_minus / (one_minus * one_minus);
        let kinetic = 0.5 * m * (r_dot * r_dot + r * r * theta_dot * theta_dot);
        kinetic * one_minus / mean_motion
    };
    let first = integrate_adaptive(kinetic_dt, 0.0, PI, rel_tol)?;
    let second = integrate_adaptive(kinetic_dt, PI, 2.0 * PI, rel_tol)?;
    let integral = first.value + second.value;
    Ok((integral / g.period, first.error_estimate + second.error_estimate))
}

pub fn radial_action_time(e: f64, l: f64, z: u32, c: &PhysicalConstants, rel_tol: f64) -> Result<ActionResult> {
    let g = ellipse_from_energy(e, l, z, c)?;
    let (mean_kinetic, kinetic_err) = time_average_kinetic(&g, c, rel_tol)?;
    let virial = ((mean_kinetic + e) / e).abs();
    if virial > VIRIAL_TOLERANCE {
        return Err(Error::NumericalInconsistency(format!(
            "virial identity violated: <K> = {mean_kinetic}, E = {e} (relative residual {virial:e})"
        )));
    }
    if g.is_circular() {
        return Ok(ActionResult::exact(0.0, ActionMethod::Time));
    }
    let total = 2.0 * mean_kinetic * g.period;
    Ok(ActionResult {
        value: (total - angular_action(l)?).max(0.0),
        method: ActionMethod::Time,
        error_estimate: 2.0 * kinetic_err,
    })
}

/// Total action `int_0^T m (r_dot^2 + r^2 theta_dot^2) dt` over one period.
pub fn total_action_time(e: f64, l: f64, z: u32, c: &PhysicalConstants, rel_tol: f64) -> Result<f64> {
    let g = ellipse_from_energy(e, l, z, c)?;
    let (mean_kinetic, _) = time_average_kinetic(&g, c, rel_tol)?;
    Ok(2.0 * mean_kinetic * g.period)
}

pub fn radial_action_closed(e: f64, l: f64, z: u32, c: &PhysicalConstants) -> Result<ActionResult> {
    let (r_min, r_max) = turning_points(e, l, z, c)?;
    if r_min == r_max {
        return Ok(ActionResult::exact(0.0, ActionMethod::Closed));
    }
    let reduced = z as f64 * c.mass_electron * c.e_squared / (-2.0 * c.mass_electron * e).sqrt();
    Ok(ActionResult::exact((2.0 * PI * (reduced - l)).max(0.0), ActionMethod::Closed))
}

/// Dispatches to the requested route.
pub fn radial_action(
    method: ActionMethod,
    e: f64,
    l: f64,
    z: u32,
    c: &PhysicalConstants,
    rel_tol: f64,
) -> Result<ActionResult> {
    match method {
        ActionMethod::Direct => radial_action_direct(e, l, z, c, rel_tol),
        ActionMethod::Theta => radial_action_theta(e, l, z, c, rel_tol),
        ActionMethod::Time => radial_action_time(e, l, z, c, rel_tol),
        ActionMethod::Residue => crate::residue::radial_action_residue(e, l, z, c),
        ActionMethod::Closed => radial_action_closed(e, l, z, c),
    }
}

/// Largest pairwise relative deviation among action values. Pairs whose
/// values are both below `abs_floor` count as agreeing.
pub fn max_pairwise_deviation(values: &[f64], abs_floor: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let scale = a.abs().max(b.abs());
            if scale <= abs_floor {
                continue;
            }
            worst = worst.max((a - b).abs() / scale);
        }
    }
    worst
}
