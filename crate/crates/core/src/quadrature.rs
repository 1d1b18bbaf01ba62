//! Integration kernels and the trigonometric integral family
//! `int_0^{N pi} sin^2 t / (eps + cos t)^2 dt`.
//!
//! The adaptive integrator is a globally adaptive Gauss-Kronrod (7, 15)
//! scheme: the interval with the largest error estimate is bisected until the
//! summed estimate meets the tolerance.

use std::collections::BinaryHeap;
use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute error floor of the adaptive integrator.
pub const ABS_FLOOR: f64 = 1e-14;

/// Default evaluation budget of the adaptive integrator.
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// Kronrod abscissae on [-1, 1] (positive half, descending) and weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_sum: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_sum: abs_sum * half.abs(),
    }
}

/// Adaptive integration of `f` over `[a, b]` with the default budget.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<QuadratureResult> {
    integrate_adaptive_with_budget(f, a, b, rel_tol, DEFAULT_MAX_EVALUATIONS)
}

/// Adaptive integration with an explicit evaluation budget.
///
/// Converges when the summed error estimate is below
/// `max(rel_tol * |value|, ABS_FLOOR)`, or when it is at the round-off level
/// of the integrand magnitudes.
pub fn integrate_adaptive_with_budget<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_evaluations: usize,
) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!("integration interval [{a}, {b}] must be finite with a < b")));
    }
    if !(rel_tol > 1e-14 && rel_tol < 1e-2) {
        return Err(Error::validation("rel_tol", format!("must lie in (1e-14, 1e-2), got {rel_tol}")));
    }

    let first = kronrod15(&f, a, b);
    let mut evaluations = 15;
    let mut value = first.value;
    let mut error = first.error;
    let mut abs_sum = first.abs_sum;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    loop {
        if !value.is_finite() {
            return Err(Error::Domain("integrand produced a non-finite value".into()));
        }
        let target = (rel_tol * value.abs()).max(ABS_FLOOR);
        if error <= target || error <= 50.0 * f64::EPSILON * abs_sum {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        if evaluations + 30 > max_evaluations {
            return Err(Error::Convergence {
                best: value,
                error_estimate: error,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval cannot be split further in floating point.
            return Err(Error::Convergence {
                best: value,
                error_estimate: error,
                evaluations,
            });
        }
        let left = kronrod15(&f, worst.a, mid);
        let right = kronrod15(&f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_sum += left.abs_sum + right.abs_sum - worst.abs_sum;
        heap.push(left);
        heap.push(right);

        // Periodically resum to avoid drift from the running updates.
        if evaluations % 3000 == 15 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
            abs_sum = heap.iter().map(|s| s.abs_sum).sum();
        }
    }
}

/// Parameters of `int_0^{N pi} sin^2 t / (eps + cos t)^2 dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigIntegralParams {
    epsilon: f64,
    n_periods: u32,
}

impl TrigIntegralParams {
    /// `epsilon` must exceed 1 and `n_periods` must be positive.
    pub fn new(epsilon: f64, n_periods: u32) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 1.0) {
            return Err(Error::Domain(format!("trigonometric integral needs epsilon > 1, got {epsilon}")));
        }
        if n_periods == 0 {
            return Err(Error::validation("n_periods", "must be a positive integer"));
        }
        Ok(TrigIntegralParams { epsilon, n_periods })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn n_periods(&self) -> u32 {
        self.n_periods
    }
}

/// `N pi (eps / sqrt(eps^2 - 1) - 1)`.
pub fn trig_integral_closed(p: TrigIntegralParams) -> f64 {
    let eps = p.epsilon;
    let n = p.n_periods as f64;
    // eps/sqrt(eps^2-1) - 1 = 1 / (sqrt(eps^2-1) (eps + sqrt(eps^2-1))), no cancellation for large eps.
    let root = ((eps - 1.0) * (eps + 1.0)).sqrt();
    n * PI / (root * (eps + root))
}

/// Adaptive quadrature of the literal integrand over `[0, N pi]`.
pub fn trig_integral_numeric(p: TrigIntegralParams, rel_tol: f64) -> Result<QuadratureResult> {
    let eps = p.epsilon;
    let integrand = move |t: f64| {
        let s = t.sin();
        let d = eps + t.cos();
        s * s / (d * d)
    };
    // One subinterval per half period keeps the peaks at odd multiples of pi on panel edges.
    let mut total = QuadratureResult {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
    };
    for k in 0..p.n_periods {
        let a = k as f64 * PI;
        let part = integrate_adaptive(integrand, a, a + PI, rel_tol)?;
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.evaluations += part.evaluations;
    }
    Ok(total)
}

/// Pole of `1 / ((w - w0)(w + w0))` in the upper half plane after the
/// substitution `w = tan(t / 2)`: `w0 = i sqrt((eps + 1) / (eps - 1))`.
pub fn upper_pole(epsilon: f64) -> Result<Complex64> {
    if !(epsilon.is_finite() && epsilon > 1.0) {
        return Err(Error::Domain(format!("pole location needs epsilon > 1, got {epsilon}")));
    }
    Ok(Complex64::new(0.0, ((epsilon + 1.0) / (epsilon - 1.0)).sqrt()))
}

/// `int_{-R}^{R} dw / (w - w0) = ln((R - w0) / (-R - w0))`.
pub fn truncated_pole_integral(epsilon: f64, radius: f64) -> Result<Complex64> {
    let w0 = upper_pole(epsilon)?;
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Domain(format!("truncation radius must be positive, got {radius}")));
    }
    let r = Complex64::new(radius, 0.0);
    Ok(((r - w0) / (-r - w0)).ln())
}

/// `int_{-inf}^{inf} dw / (w - w0)`, estimated from truncated integrals at
/// growing radii with Richardson extrapolation on the `1/R` error term.
/// Converges to `i pi` for every `epsilon > 1`.
pub fn real_line_pole_integral(epsilon: f64) -> Result<Complex64> {
    let w0 = upper_pole(epsilon)?;
    let mut radius = 1e3 * w0.im.max(1.0);
    let mut previous = truncated_pole_integral(epsilon, radius)?;
    let mut estimate = previous;
    for _ in 0..4 {
        radius *= 2.0;
        let current = truncated_pole_integral(epsilon, radius)?;
        estimate = 2.0 * current - previous;
        previous = current;
    }
    Ok(estimate)
}

/// The trigonometric integral assembled from the pole integral rather than by
/// quadrature:
/// `N [ eps/(eps-1) * I / w0 ] - N pi`, with `I` the real-line pole integral.
pub fn trig_integral_via_pole(p: TrigIntegralParams) -> Result<f64> {
    let eps = p.epsilon;
    let w0 = upper_pole(eps)?;
    let line = real_line_pole_integral(eps)?;
    let half_period = eps / (eps - 1.0) * line / w0;
    Ok(p.n_periods as f64 * (half_period.re - PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_integrand() {
        let r = integrate_adaptive(|_| 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        assert!(r.evaluations >= 1);
        assert!(r.error_estimate >= 0.0);
    }

    #[test]
    fn sine_over_half_period() {
        let r = integrate_adaptive(f64::sin, 0.0, PI, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_valued_integral_terminates() {
        let r = integrate_adaptive(f64::cos, 0.0, 2.0 * PI, 1e-12).unwrap();
        assert!(r.value.abs() < 1e-13);
    }

    #[test]
    fn shifted_integrand_from_direct_route() {
        let eps = 2.0 / 3f64.sqrt();
        let f = |t: f64| {
            let c = t.cos();
            let d = eps + t.sin();
            c * c / (d * d)
        };
        let r = integrate_adaptive(f, -PI / 2.0, PI / 2.0, 1e-12).unwrap();
        assert!((r.value - PI).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn bad_arguments() {
        assert!(integrate_adaptive(|x| x, 1.0, 0.0, 1e-8).is_err());
        assert!(integrate_adaptive(|x| x, 0.0, 1.0, 1e-16).is_err());
        assert!(integrate_adaptive(|x| x, 0.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let err = integrate_adaptive_with_budget(|x: f64| 1.0 / x.sqrt(), 1e-300, 1.0, 1e-13, 200).unwrap_err();
        match err {
            Error::Convergence { best, evaluations, .. } => {
                assert!(best > 0.0);
                assert!(evaluations <= 200);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn closed_form_examples() {
        let p = TrigIntegralParams::new(2.0, 1).unwrap();
        assert!((trig_integral_closed(p) - PI * (2.0 / 3f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((trig_integral_closed(p) - 0.486_006_074_879).abs() < 1e-11);
        let p = TrigIntegralParams::new(2.0 / 3f64.sqrt(), 2).unwrap();
        assert!((trig_integral_closed(p) - 2.0 * PI).abs() < 1e-13);
        let p = TrigIntegralParams::new(100.0, 1).unwrap();
        let v = trig_integral_closed(p);
        assert!(v > 0.0 && v < 1e-3);
        assert!((v / (PI / (2.0 * 100.0 * 100.0)) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn params_reject_eps_at_most_one() {
        assert!(matches!(TrigIntegralParams::new(1.0, 1), Err(Error::Domain(_))));
        assert!(TrigIntegralParams::new(0.5, 1).is_err());
        assert!(TrigIntegralParams::new(2.0, 0).is_err());
    }

    #[test]
    fn numeric_matches_closed() {
        for (eps, n, tol) in [(2.0, 1, 1e-10), (1.01, 1, 1e-8), (10.0, 2, 1e-10), (1.001, 2, 1e-6)] {
            let p = TrigIntegralParams::new(eps, n).unwrap();
            let num = trig_integral_numeric(p, 1e-12).unwrap().value;
            let closed = trig_integral_closed(p);
            assert!(((num - closed) / closed).abs() < tol, "eps={eps} N={n}: {num} vs {closed}");
        }
    }

    #[test]
    fn truncated_pole_integral_approaches_i_pi() {
        let v = truncated_pole_integral(2.0, 1e6).unwrap();
        assert!((v - Complex64::new(0.0, PI)).norm() < 1e-5);
        for eps in [1.5, 5.0] {
            let v = real_line_pole_integral(eps).unwrap();
            assert!(v.re.abs() < 1e-12);
            assert!((v.im - PI).abs() < 1e-9, "{eps}: {v}");
        }
    }

    #[test]
    fn pole_route_reproduces_closed_form() {
        for eps in [1.01, 1.5, 2.0, 10.0] {
            let p = TrigIntegralParams::new(eps, 2).unwrap();
            let via = trig_integral_via_pole(p).unwrap();
            let closed = trig_integral_closed(p);
            assert!(((via - closed) / closed).abs() < 1e-8, "eps={eps}: {via} vs {closed}");
        }
    }
}
