//! Allowed energies from the quantization conditions `J_r = n_r h`,
//! `2 pi L = n_theta h`.

use crate::actions::{radial_action, ActionMethod};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::orbit::circular_energy;

/// Radial and angular quantum numbers. `n_theta = 0` would mean `L = 0`, a
/// line orbit through the nucleus, so it is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    n_r: u32,
    n_theta: u32,
}

impl QuantumNumbers {
    pub fn new(n_r: u32, n_theta: u32) -> Result<Self> {
        if n_theta == 0 {
            return Err(Error::validation("n_theta", "must be at least 1 (L = 0 has no bound orbit)"));
        }
        Ok(QuantumNumbers { n_r, n_theta })
    }

    pub fn n_r(&self) -> u32 {
        self.n_r
    }

    pub fn n_theta(&self) -> u32 {
        self.n_theta
    }

    /// Principal quantum number `n_r + n_theta`.
    pub fn principal(&self) -> u32 {
        self.n_r + self.n_theta
    }

    pub fn angular_momentum(&self, c: &PhysicalConstants) -> f64 {
        self.n_theta as f64 * c.hbar
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelMethod {
    Closed,
    Numeric(ActionMethod),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub angular_momentum: f64,
    pub method: LevelMethod,
}

fn check_charge(z: u32) -> Result<()> {
    if z == 0 {
        return Err(Error::validation("Z", "nuclear charge must be at least 1"));
    }
    Ok(())
}

/// `E = -m Z^2 e^4 / (2 hbar^2 n^2)`.
///
/// Charges at or above the inverse fine-structure constant are still
/// computed; callers can consult [`crate::spectrum::check_z_limit`].
pub fn energy_closed(qn: QuantumNumbers, z: u32, c: &PhysicalConstants) -> Result<EnergyLevel> {
    Ok(EnergyLevel {
        qn,
        energy: bohr_energy(qn.principal(), z, c)?,
        angular_momentum: qn.angular_momentum(c),
        method: LevelMethod::Closed,
    })
}

/// `E_n = -R / n^2` with the energy Rydberg `R = m Z^2 e^4 / (2 hbar^2)`.
pub fn bohr_energy(n: u32, z: u32, c: &PhysicalConstants) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("principal quantum number must be at least 1".into()));
    }
    check_charge(z)?;
    let nf = n as f64;
    Ok(-crate::spectrum::rydberg_energy(z, c) / (nf * nf))
}

/// Every `(n_r, n_theta)` with `n_r + n_theta = n`, by ascending `n_r`.
pub fn degenerate_states(n: u32) -> Vec<QuantumNumbers> {
    (0..n)
        .map(|n_r| QuantumNumbers {
            n_r,
            n_theta: n - n_r,
        })
        .collect()
}

/// Solves `J_r(E, n_theta hbar) = n_r h` for `E` with the chosen action route.
///
/// `J_r` grows strictly with `E` on `(E_circ, 0)`, so the root is bracketed
/// between the circular energy (where `J_r = 0`) and an energy found by
/// stepping toward zero. The bracket is then shrunk with Illinois-weighted
/// secant steps, falling back to bisection when they stall.
pub fn energy_numeric(
    qn: QuantumNumbers,
    z: u32,
    c: &PhysicalConstants,
    rel_tol: f64,
    method: ActionMethod,
) -> Result<EnergyLevel> {
    check_charge(z)?;
    if !(1e-12..1e-2).contains(&rel_tol) {
        return Err(Error::validation("rel_tol", format!("must lie in [1e-12, 1e-2), got {rel_tol}")));
    }
    let l = qn.angular_momentum(c);
    let e_circ = circular_energy(l, z, c);
    let level = |energy| EnergyLevel {
        qn,
        energy,
        angular_momentum: l,
        method: LevelMethod::Numeric(method),
    };
    if qn.n_r == 0 {
        return Ok(level(e_circ));
    }

    let target = qn.n_r as f64 * c.planck_h;
    let quad_tol = (0.1 * rel_tol).clamp(1e-13, 1e-3);
    let residual = |e: f64| -> Result<f64> {
        match radial_action(method, e, l, z, c, quad_tol) {
            Ok(a) => Ok(a.value - target),
            // A cut too thin to resolve is a circular orbit: J_r = 0.
            Err(Error::DegenerateCut { .. }) => Ok(-target),
            Err(err) => Err(err),
        }
    };

    let mut lo = e_circ;
    let mut f_lo = -target;
    let mut hi = 0.25 * e_circ;
    let mut f_hi = residual(hi)?;
    let mut expansions = 0;
    while f_hi < 0.0 {
        lo = hi;
        f_lo = f_hi;
        hi *= 0.25;
        f_hi = residual(hi)?;
        expansions += 1;
        if expansions > 60 {
            return Err(Error::Bracket(format!(
                "no sign change found for {qn:?} between {e_circ} and {hi}"
            )));
        }
    }
    if f_hi == 0.0 {
        return Ok(level(hi));
    }

    let e_tol = 0.1 * rel_tol;
    let mut side = 0i8;
    for _ in 0..200 {
        let width = hi - lo;
        if width.abs() <= e_tol * lo.abs().min(hi.abs()) {
            break;
        }
        let mut trial = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if !(trial > lo && trial < hi) {
            trial = 0.5 * (lo + hi);
        }
        let f_trial = residual(trial)?;
        // |dE/E| <= 2 |dJ| / J at fixed L.
        if f_trial.abs() <= 0.5 * e_tol * target {
            return Ok(level(trial));
        }
        if f_trial < 0.0 {
            lo = trial;
            f_lo = f_trial;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = trial;
            f_hi = f_trial;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
        // Force a bisection when one end has not moved for a while.
        if (hi - lo).abs() > 0.5 * width.abs() {
            let mid = 0.5 * (lo + hi);
            let f_mid = residual(mid)?;
            if f_mid < 0.0 {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
            side = 0;
        }
    }
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(Error::Bracket(format!("bracket lost its sign change for {qn:?}")));
    }
    let energy = if f_hi.abs() < f_lo.abs() { hi } else { lo };
    Ok(level(energy))
}

/// `(E_{n+1} - E_n) / h` divided by the orbital frequency `1 / T_n` of the
/// `n`-th circular orbit.
pub fn correspondence_ratio(n: u32, z: u32, c: &PhysicalConstants) -> Result<f64> {
    let qn = QuantumNumbers::new(0, n)?;
    let gap = bohr_energy(n + 1, z, c)? - bohr_energy(n, z, c)?;
    let level = energy_closed(qn, z, c)?;
    let g = crate::orbit::ellipse_from_energy(level.energy, level.angular_momentum, z, c)?;
    Ok(gap / c.planck_h * g.period)
}
