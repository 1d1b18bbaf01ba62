//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use sommerfeld::actions::{max_pairwise_deviation, radial_action, time_average_kinetic, ActionMethod};
use sommerfeld::orbit::{ellipse_from_energy, kepler_position};
use sommerfeld::quadrature::{integrate_adaptive, trig_integral_numeric, TrigIntegralParams};
use sommerfeld::quantize::{correspondence_ratio, degenerate_states, energy_closed, energy_numeric};
use sommerfeld::residue::{residue_at_infinity_numeric, residue_at_zero_numeric, BranchFunctionSpec, DEFAULT_NODES};
use sommerfeld::spectrum::transition;
use sommerfeld::{PhysicalConstants, QuantumNumbers};

const CHARGES: [u32; 3] = [1, 2, 3];
const QUAD_TOL: f64 = 1e-12;
const ENERGY_TOL: f64 = 1e-11;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(worst: f64, tol: f64, what: &str) -> Outcome {
    Outcome {
        passed: worst <= tol,
        detail: format!("{what}: worst {worst:.3e} vs tol {tol:.1e}"),
    }
}

fn failed(detail: impl Into<String>) -> Outcome {
    Outcome { passed: false, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Every (n_r, n_theta) with n_r in 0..=5 and n_theta in 1..=6; covers every state with n <= 6.
fn grid() -> Vec<QuantumNumbers> {
    let mut g = Vec::new();
    for n_r in 0..=5 {
        for n_theta in 1..=6 {
            g.push(QuantumNumbers::new(n_r, n_theta).unwrap());
        }
    }
    g
}

fn reference_energy(q: QuantumNumbers, z: u32, c: &PhysicalConstants) -> f64 {
    // -m Z^2 e^4 / (2 hbar^2 (n_r + n_theta)^2)
    let n = q.principal() as f64;
    let ze2 = z as f64 * c.e_squared;
    -c.mass_electron * ze2 * ze2 / (2.0 * c.hbar * c.hbar * n * n)
}

fn criterion_1(c: &PhysicalConstants) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for z in CHARGES {
        for q in grid() {
            let exact = reference_energy(q, z, c);
            for m in ActionMethod::NUMERIC {
                match energy_numeric(q, z, c, ENERGY_TOL, m) {
                    Ok(level) => worst = worst.max(rel(level.energy, exact)),
                    Err(e) => return failed(format!("{q:?} Z={z} {}: {e}", m.name())),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let mut o = outcome(worst, 1e-8, "energy_numeric vs closed form, 4 methods x 108 states");
    o.passed &= elapsed < Duration::from_secs(30);
    o.detail.push_str(&format!(", {:.2}s of 30s", elapsed.as_secs_f64()));
    o
}

fn criterion_2(c: &PhysicalConstants) -> Outcome {
    let mut worst: f64 = 0.0;
    for z in CHARGES {
        for q in grid() {
            let e = reference_energy(q, z, c);
            let l = q.angular_momentum(c);
            let methods: Vec<ActionMethod> = ActionMethod::NUMERIC
                .into_iter()
                .filter(|m| q.n_r() > 0 || *m != ActionMethod::Residue)
                .collect();
            let mut values = Vec::new();
            for m in methods {
                match radial_action(m, e, l, z, c, QUAD_TOL) {
                    Ok(r) => values.push(r.value),
                    Err(err) => return failed(format!("{q:?} Z={z} {}: {err}", m.name())),
                }
            }
            worst = worst.max(max_pairwise_deviation(&values, 1e-12 * c.planck_h));
        }
    }
    outcome(worst, 1e-8, "max pairwise relative deviation of radial actions")
}

fn criterion_3() -> Outcome {
    let mut worst_ratio: f64 = 0.0;
    let mut worst = String::new();
    let cases = [(1.01, 1e-8), (2.0 / 3f64.sqrt(), 1e-8), (1.5, 1e-8), (2.0, 1e-8), (10.0, 1e-8), (1.001, 1e-6)];
    for (eps, tol) in cases {
        for n in [1u32, 2] {
            let exact = n as f64 * PI * (eps / (eps * eps - 1.0).sqrt() - 1.0);
            let p = TrigIntegralParams::new(eps, n).unwrap();
            let r = match trig_integral_numeric(p, QUAD_TOL) {
                Ok(r) => rel(r.value, exact),
                Err(e) => return failed(format!("eps={eps} N={n}: {e}")),
            };
            if r / tol > worst_ratio {
                worst_ratio = r / tol;
                worst = format!("eps={eps} N={n} rel {r:.3e} vs {tol:.0e}");
            }
        }
    }
    Outcome {
        passed: worst_ratio <= 1.0,
        detail: format!("trig integral vs closed form, worst {worst}"),
    }
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    for ratio in [1.01, 2.0, 13.93, 1e3] {
        let r_min = 0.75;
        let r_max = r_min * ratio;
        let spec = BranchFunctionSpec::new(r_min, r_max).unwrap();
        let zero = residue_at_zero_numeric(&spec, DEFAULT_NODES);
        let inf = residue_at_infinity_numeric(&spec, DEFAULT_NODES);
        let (zero, inf) = match (zero, inf) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return failed(format!("ratio {ratio}: {e}")),
        };
        let inf_exact = Complex64::new(0.0, (r_min + r_max) / (2.0 * (r_min * r_max).sqrt()));
        worst = worst.max((zero - Complex64::new(0.0, -1.0)).norm());
        worst = worst.max((inf - inf_exact).norm());
    }
    outcome(worst, 1e-9, "absolute residue error at 0 and infinity")
}

fn criterion_5(c: &PhysicalConstants) -> Outcome {
    let mut worst: f64 = 0.0;
    for z in CHARGES {
        for q in grid() {
            let e = reference_energy(q, z, c);
            let g = match ellipse_from_energy(e, q.angular_momentum(c), z, c) {
                Ok(g) => g,
                Err(err) => return failed(format!("{q:?} Z={z}: {err}")),
            };
            match time_average_kinetic(&g, c, QUAD_TOL) {
                Ok((k, _)) => worst = worst.max(rel(k, -e)),
                Err(err) => return failed(format!("{q:?} Z={z}: {err}")),
            }
        }
    }
    outcome(worst, 1e-9, "<K> vs -E")
}

fn criterion_6(c: &PhysicalConstants) -> Outcome {
    const SAMPLES: usize = 1000;
    let mut worst: f64 = 0.0;
    for z in CHARGES {
        for q in grid() {
            let e = reference_energy(q, z, c);
            let l = q.angular_momentum(c);
            let g = match ellipse_from_energy(e, l, z, c) {
                Ok(g) => g,
                Err(err) => return failed(format!("{q:?} Z={z}: {err}")),
            };
            for k in 0..SAMPLES {
                let t = g.period * k as f64 / SAMPLES as f64;
                let s = match kepler_position(&g, t, c) {
                    Ok(s) => s,
                    Err(err) => return failed(format!("{q:?} Z={z} t={t}: {err}")),
                };
                let kinetic = 0.5 * c.mass_electron * (s.r_dot * s.r_dot + s.r * s.r * s.theta_dot * s.theta_dot);
                let potential = -(z as f64) * c.e_squared / s.r;
                worst = worst.max(rel(kinetic + potential, e));
                worst = worst.max(rel(c.mass_electron * s.r * s.r * s.theta_dot, l));
            }
            let swept = integrate_adaptive(
                |t| {
                    let s = kepler_position(&g, t, c).expect("sample inside one period");
                    0.5 * s.r * s.r * s.theta_dot
                },
                0.0,
                g.period,
                QUAD_TOL,
            );
            let area = PI * g.semi_major * g.semi_major * (1.0 - g.eccentricity * g.eccentricity).sqrt();
            match swept {
                Ok(r) => worst = worst.max(rel(r.value, area)),
                Err(err) => return failed(format!("{q:?} Z={z} area: {err}")),
            }
        }
    }
    outcome(worst, 1e-9, "energy, angular momentum and area law")
}

fn criterion_7(c: &PhysicalConstants) -> Outcome {
    let mut worst: f64 = 0.0;
    for z in CHARGES {
        for n in 1..=6 {
            let states = degenerate_states(n);
            if states.len() != n as usize {
                return failed(format!("n={n} has {} partitions", states.len()));
            }
            let closed: Vec<f64> = states.iter().map(|&q| energy_closed(q, z, c).unwrap().energy).collect();
            if closed.iter().any(|e| e.to_bits() != closed[0].to_bits()) {
                return failed(format!("closed-form energies differ at n={n} Z={z}: {closed:?}"));
            }
            let mut numeric = Vec::new();
            for &q in &states {
                for m in ActionMethod::NUMERIC {
                    match energy_numeric(q, z, c, ENERGY_TOL, m) {
                        Ok(level) => numeric.push(level.energy),
                        Err(err) => return failed(format!("{q:?} Z={z}: {err}")),
                    }
                }
            }
            worst = worst.max(max_pairwise_deviation(&numeric, 0.0));
        }
    }
    outcome(worst, 1e-8, "closed form identical; numeric spread")
}

fn criterion_8(c: &PhysicalConstants) -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for (n, tol) in [(20u32, 0.05), (200, 0.005)] {
        // Independent evaluation: level spacing over h against the classical orbit frequency.
        let e_n = reference_energy(QuantumNumbers::new(0, n).unwrap(), 1, c);
        let e_next = reference_energy(QuantumNumbers::new(0, n + 1).unwrap(), 1, c);
        let a = -c.e_squared / (2.0 * e_n);
        let period = 2.0 * PI * (c.mass_electron * a * a * a / c.e_squared).sqrt();
        let ratio = (e_next - e_n) / c.planck_h * period;
        let lib = correspondence_ratio(n, 1, c).unwrap_or(f64::NAN);
        let dev = (ratio - 1.0).abs().max((lib - 1.0).abs());
        passed &= dev <= tol;
        parts.push(format!("n={n} |ratio-1| {dev:.4} vs {tol}"));
    }
    Outcome { passed, detail: parts.join("; ") }
}

fn criterion_9() -> Outcome {
    let si = PhysicalConstants::si();
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (upper, lower, measured) in [(3, 2, 656.28), (2, 1, 121.57)] {
        let line = match transition(upper, lower, 1, &si) {
            Ok(l) => l,
            Err(e) => return failed(format!("{upper}->{lower}: {e}")),
        };
        let nm = line.wavelength * 1e9;
        worst = worst.max(rel(nm, measured));
        parts.push(format!("{upper}->{lower} {nm:.3} nm"));
    }
    let mut o = outcome(worst, 0.005, &parts.join(", "));
    o.detail = format!("{} (relative)", o.detail);
    o
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_sommerfeld")).arg("verify").output();
    let elapsed = start.elapsed();
    match output {
        Ok(out) => {
            let code = out.status.code().unwrap_or(-1);
            let checks = String::from_utf8_lossy(&out.stdout)
                .lines()
                .filter(|l| l.ends_with(" pass") || l.ends_with(" FAIL"))
                .count();
            Outcome {
                passed: code == 0 && elapsed < Duration::from_secs(60) && checks >= 25,
                detail: format!("exit {code}, {checks} checks, {:.2}s of 60s", elapsed.as_secs_f64()),
            }
        }
        Err(e) => failed(format!("could not run binary: {e}")),
    }
}

fn main() {
    let c = PhysicalConstants::atomic();
    let criteria: Vec<Criterion> = vec![
        ("closed-form level reproduction", Box::new(|| criterion_1(&c))),
        ("four-way action agreement", Box::new(|| criterion_2(&c))),
        ("trigonometric integral identity", Box::new(criterion_3)),
        ("branch-function residues", Box::new(criterion_4)),
        ("virial theorem", Box::new(|| criterion_5(&c))),
        ("conservation along trajectories", Box::new(|| criterion_6(&c))),
        ("degeneracy", Box::new(|| criterion_7(&c))),
        ("correspondence limit", Box::new(|| criterion_8(&c))),
        ("spectral sanity", Box::new(criterion_9)),
        ("verify command", Box::new(criterion_10)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.passed {
            failures += 1;
        }
        println!("{} criterion {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
