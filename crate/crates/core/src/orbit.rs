//! Geometry and kinematics of a bound Coulomb orbit.
//!
//! Periapsis sits at `theta = 0` and is reached at `t = 0`.

use std::f64::consts::PI;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Relative width below zero within which a negative discriminant is
/// treated as a circular orbit.
const DISCRIMINANT_CLAMP: f64 = 1e-12;

/// Positive discriminants this small (relative) are round-off from a circular input.
const DISCRIMINANT_ROUNDOFF: f64 = 8.0 * f64::EPSILON;

const KEPLER_TOL: f64 = 1e-13;
const KEPLER_MAX_ITER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitGeometry {
    pub energy: f64,
    pub angular_momentum: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub semi_major: f64,
    pub eccentricity: f64,
    pub period: f64,
    pub z: u32,
}

impl OrbitGeometry {
    pub fn is_circular(&self) -> bool {
        self.r_min == self.r_max
    }

    /// Semi-minor axis `sqrt(r_min r_max) = a sqrt(1 - eps^2)`.
    pub fn semi_minor(&self) -> f64 {
        (self.r_min * self.r_max).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSample {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub r_dot: f64,
    pub theta_dot: f64,
    pub kinetic: f64,
    pub potential: f64,
}

impl TimeSample {
    pub fn total_energy(&self) -> f64 {
        self.kinetic + self.potential
    }
}

fn check_charge(z: u32) -> Result<f64> {
    if z == 0 {
        return Err(Error::validation("Z", "nuclear charge must be at least 1"));
    }
    Ok(z as f64)
}

/// Energy of the circular orbit with angular momentum `l`: `-Z^2 m e^4 / (2 L^2)`.
pub fn circular_energy(l: f64, z: u32, c: &PhysicalConstants) -> f64 {
    let z = z as f64;
    -z * z * c.mass_electron * c.e_squared * c.e_squared / (2.0 * l * l)
}

/// Periapsis and apoapsis radii: the roots of `L^2 u^2 - 2 Z m e^2 u - 2 m E = 0`
/// with `u = 1 / r`.
pub fn turning_points(e: f64, l: f64, z: u32, c: &PhysicalConstants) -> Result<(f64, f64)> {
    let zf = check_charge(z)?;
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::Domain(format!("angular momentum must be positive, got {l}")));
    }
    if !e.is_finite() {
        return Err(Error::Domain(format!("energy must be finite, got {e}")));
    }
    if e >= 0.0 {
        return Err(Error::UnboundOrbit { energy: e });
    }
    let qa = l * l;
    let qb = -2.0 * zf * c.mass_electron * c.e_squared;
    let qc = -2.0 * c.mass_electron * e;
    let scale = qb * qb;
    let mut disc = qb * qb - 4.0 * qa * qc;
    if disc < -DISCRIMINANT_CLAMP * scale {
        return Err(Error::NoRealOrbit {
            energy: e,
            circular: circular_energy(l, z, c),
        });
    }
    if disc <= DISCRIMINANT_ROUNDOFF * scale {
        disc = 0.0;
    }
    // qb < 0, so q = -(qb - sqrt(disc)) / 2 carries no cancellation.
    let q = 0.5 * (-qb + disc.sqrt());
    let r_min = qa / q;
    let r_max = if disc == 0.0 { r_min } else { q / qc };
    Ok((r_min, r_max))
}

pub fn ellipse_from_energy(e: f64, l: f64, z: u32, c: &PhysicalConstants) -> Result<OrbitGeometry> {
    let (r_min, r_max) = turning_points(e, l, z, c)?;
    let semi_major = -(z as f64) * c.e_squared / (2.0 * e);
    let eccentricity = (r_max - r_min) / (r_max + r_min);
    let mut g = OrbitGeometry {
        energy: e,
        angular_momentum: l,
        r_min,
        r_max,
        semi_major,
        eccentricity,
        period: 0.0,
        z,
    };
    g.period = orbital_period(&g, c);
    Ok(g)
}

/// `r(theta) = a (1 - eps^2) / (1 + eps cos theta)`.
pub fn radius_at_angle(g: &OrbitGeometry, theta: f64) -> f64 {
    let ecc = g.eccentricity;
    g.semi_major * (1.0 - ecc) * (1.0 + ecc) / (1.0 + ecc * theta.cos())
}

/// Signed radial momentum `+-sqrt(-L^2/r^2 + 2 Z m e^2 / r + 2 m E)`.
pub fn radial_momentum(r: f64, e: f64, l: f64, z: u32, c: &PhysicalConstants, sign: f64) -> Result<f64> {
    let (r_min, r_max) = turning_points(e, l, z, c)?;
    if !(r >= r_min && r <= r_max) {
        return Err(Error::Domain(format!("radius {r} lies outside the orbit [{r_min}, {r_max}]")));
    }
    if r == r_min || r == r_max {
        return Ok(0.0);
    }
    let radicand = -l * l / (r * r) + 2.0 * z as f64 * c.mass_electron * c.e_squared / r + 2.0 * c.mass_electron * e;
    let sign = if sign < 0.0 { -1.0 } else { 1.0 };
    Ok(sign * radicand.max(0.0).sqrt())
}

/// `T = 2 pi m a^2 sqrt(1 - eps^2) / L`, from the swept area of the ellipse.
pub fn orbital_period(g: &OrbitGeometry, c: &PhysicalConstants) -> f64 {
    2.0 * PI * c.mass_electron * g.semi_major * g.semi_minor() / g.angular_momentum
}

/// Solves `u - eps sin u = mean_anomaly` for the eccentric anomaly.
pub fn eccentric_anomaly(mean_anomaly: f64, eccentricity: f64) -> Result<f64> {
    let mut u = if eccentricity > 0.8 { PI } else { mean_anomaly };
    for _ in 0..KEPLER_MAX_ITER {
        let f = u - eccentricity * u.sin() - mean_anomaly;
        let df = 1.0 - eccentricity * u.cos();
        let step = f / df;
        u -= step;
        if step.abs() < KEPLER_TOL {
            return Ok(u);
        }
    }
    Err(Error::KeplerNonConvergence { eccentricity })
}

/// Position and velocities at time `t` (taken modulo the period).
pub fn kepler_position(g: &OrbitGeometry, t: f64, c: &PhysicalConstants) -> Result<TimeSample> {
    let ecc = g.eccentricity;
    let mean_motion = 2.0 * PI / g.period;
    let phase = (t / g.period).rem_euclid(1.0);
    let mean_anomaly = 2.0 * PI * phase;
    let u = eccentric_anomaly(mean_anomaly, ecc)?;
    let (sin_u, cos_u) = u.sin_cos();
    let one_minus = 1.0 - ecc * cos_u;
    let r = g.semi_major * one_minus;

    // True anomaly via the half-angle relation; atan2 picks the quadrant from sin u.
    let half = 0.5 * u;
    let theta = (2.0 * ((1.0 + ecc).sqrt() * half.sin()).atan2((1.0 - ecc).sqrt() * half.cos())).rem_euclid(2.0 * PI);

    let u_dot = mean_motion / one_minus;
    let r_dot = g.semi_major * ecc * sin_u * u_dot;
    let theta_dot = mean_motion * ((1.0 - ecc) * (1.0 + ecc)).sqrt() / (one_minus * one_minus);

    let m = c.mass_electron;
    let kinetic = 0.5 * m * (r_dot * r_dot + r * r * theta_dot * theta_dot);
    let potential = -(g.z as f64) * c.e_squared / r;
    Ok(TimeSample {
        t,
        r,
        theta,
        r_dot,
        theta_dot,
        kinetic,
        potential,
    })
}
