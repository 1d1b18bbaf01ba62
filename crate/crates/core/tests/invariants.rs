use num_complex::Complex64;
use proptest::prelude::*;
use sommerfeld::actions::{radial_action, ActionMethod};
use sommerfeld::orbit::{ellipse_from_energy, kepler_position, radial_momentum, turning_points};
use sommerfeld::quadrature::{trig_integral_closed, trig_integral_numeric, trig_integral_via_pole, TrigIntegralParams};
use sommerfeld::quantize::{energy_closed, energy_numeric};
use sommerfeld::residue::{branch_f, cut_integral, BranchFunctionSpec, ResidueMode};
use sommerfeld::{PhysicalConstants, QuantumNumbers};

/// Energy in (-2, -0.01) and a fraction in (0.05, 0.98) of the circular-orbit angular momentum.
fn bound_orbit() -> impl Strategy<Value = (f64, f64, u32)> {
    (-2.0f64..-0.01, 0.05f64..0.98, 1u32..=4).prop_map(|(e, frac, z)| {
        let l_max = z as f64 / (-2.0 * e).sqrt();
        (e, frac * l_max, z)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trig_integral_routes_agree(eps in 1.05f64..50.0, n in 1u32..=4) {
        let p = TrigIntegralParams::new(eps, n).unwrap();
        let closed = trig_integral_closed(p);
        let numeric = trig_integral_numeric(p, 1e-12).unwrap().value;
        let pole = trig_integral_via_pole(p).unwrap();
        prop_assert!((numeric / closed - 1.0).abs() < 1e-9);
        prop_assert!((pole / closed - 1.0).abs() < 1e-8);
        prop_assert!(closed > 0.0);
    }

    #[test]
    fn branch_function_conjugate_symmetry(
        r_min in 0.1f64..5.0,
        ratio in 1.01f64..100.0,
        x in -50.0f64..50.0,
        y in 0.01f64..50.0,
    ) {
        let spec = BranchFunctionSpec::new(r_min, r_min * ratio).unwrap();
        let z = Complex64::new(x, y);
        let f = branch_f(z, &spec).unwrap();
        let g = branch_f(z.conj(), &spec).unwrap();
        prop_assert!((g + f.conj()).norm() <= 1e-12 * f.norm().max(1.0));
    }

    #[test]
    fn cut_integral_modes_agree(r_min in 0.1f64..5.0, ratio in 1.01f64..1000.0) {
        let spec = BranchFunctionSpec::new(r_min, r_min * ratio).unwrap();
        let a = cut_integral(&spec, ResidueMode::Analytic).unwrap().cut_integral;
        let n = cut_integral(&spec, ResidueMode::Numeric).unwrap().cut_integral;
        prop_assert!((n - a).abs() <= 1e-9 * a.max(1e-3));
    }

    #[test]
    fn turning_points_satisfy_vieta((e, l, z) in bound_orbit()) {
        let c = PhysicalConstants::atomic();
        let (r_min, r_max) = turning_points(e, l, z, &c).unwrap();
        prop_assert!(0.0 < r_min && r_min < r_max);
        prop_assert!(((r_min + r_max) / (z as f64 / -e) - 1.0).abs() < 1e-12);
        prop_assert!(((r_min * r_max) / (l * l / (-2.0 * e)) - 1.0).abs() < 1e-11);
        let mid = 0.5 * (r_min + r_max);
        prop_assert!(radial_momentum(mid, e, l, z, &c, 1.0).unwrap() > 0.0);
    }

    #[test]
    fn trajectory_is_periodic((e, l, z) in bound_orbit(), phase in 0.0f64..1.0) {
        let c = PhysicalConstants::atomic();
        let g = ellipse_from_energy(e, l, z, &c).unwrap();
        let t = phase * g.period;
        let a = kepler_position(&g, t, &c).unwrap();
        let b = kepler_position(&g, t + g.period, &c).unwrap();
        prop_assert!((a.r - b.r).abs() <= 1e-9 * g.r_max);
        prop_assert!(g.r_min * (1.0 - 1e-12) <= a.r && a.r <= g.r_max * (1.0 + 1e-12));
        prop_assert!((a.total_energy() / e - 1.0).abs() < 1e-9);
    }

    #[test]
    fn numeric_actions_match_closed((e, l, z) in bound_orbit()) {
        let c = PhysicalConstants::atomic();
        let closed = radial_action(ActionMethod::Closed, e, l, z, &c, 1e-12).unwrap().value;
        for m in ActionMethod::NUMERIC {
            let v = radial_action(m, e, l, z, &c, 1e-12).unwrap().value;
            prop_assert!((v - closed).abs() <= 1e-8 * closed.max(1e-6), "{} {v} {closed}", m.name());
        }
    }

    #[test]
    fn radial_action_scales_with_charge((e, l, _z) in bound_orbit(), z in 2u32..=5) {
        let c = PhysicalConstants::atomic();
        let l = l / _z as f64;
        let hydrogen = radial_action(ActionMethod::Direct, e, l, 1, &c, 1e-12).unwrap().value;
        let scaled = radial_action(ActionMethod::Direct, e * (z * z) as f64, l, z, &c, 1e-12).unwrap().value;
        prop_assert!((scaled - hydrogen).abs() <= 1e-9 * hydrogen.max(1.0));
    }

    #[test]
    fn levels_depend_only_on_principal(n_r in 0u32..8, n_theta in 1u32..8, z in 1u32..=3) {
        let c = PhysicalConstants::atomic();
        let q = QuantumNumbers::new(n_r, n_theta).unwrap();
        let n = q.principal() as f64;
        let e = energy_closed(q, z, &c).unwrap().energy;
        prop_assert!((e / (-((z * z) as f64) / (2.0 * n * n)) - 1.0).abs() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn numeric_levels_invert_quantization(n_r in 0u32..5, n_theta in 1u32..5, z in 1u32..=3) {
        let c = PhysicalConstants::atomic();
        let q = QuantumNumbers::new(n_r, n_theta).unwrap();
        let exact = energy_closed(q, z, &c).unwrap().energy;
        let level = energy_numeric(q, z, &c, 1e-10, ActionMethod::Theta).unwrap();
        prop_assert!((level.energy / exact - 1.0).abs() < 1e-9);
    }
}
