//! Quadrature helpers shared by the limit-law computations.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

/// Default panel count for the singularity-absorbing Simpson rules.
pub const DEFAULT_QUAD_PANELS: usize = 1 << 14;

/// Composite Simpson rule with `panels` subintervals (rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    if a >= b {
        return 0.0;
    }
    let n = panels.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Integral of `g(x) · f_K(x)` over `[a, b] ∩ (-1/√2, 1/√2)`, where `f_K` is
/// the arcsine-type density `1/(π(1-x²)√(1-2x²))`.
///
/// The substitution `x = sin(u)/√2` cancels the inverse-square-root endpoint
/// singularity exactly: the weighted measure becomes
/// `√2 du / (π (2 - sin²u))`, which is smooth on `[-π/2, π/2]`.
pub fn konno_weighted_integral<F: Fn(f64) -> f64>(g: F, a: f64, b: f64, panels: usize) -> f64 {
    let lo = a.max(-FRAC_1_SQRT_2);
    let hi = b.min(FRAC_1_SQRT_2);
    if lo >= hi {
        return 0.0;
    }
    let ua = (lo * SQRT_2).clamp(-1.0, 1.0).asin();
    let ub = (hi * SQRT_2).clamp(-1.0, 1.0).asin();
    simpson(
        |u| {
            let s = u.sin();
            g(s * FRAC_1_SQRT_2) * SQRT_2 / (PI * (2.0 - s * s))
        },
        ua,
        ub,
        panels,
    )
}

/// Average of a smooth 2π-periodic function over `[-π, π)`, i.e.
/// `∫ f(k) dk/2π`, using a uniform midpoint grid.
///
/// For periodic analytic integrands this rule converges exponentially in
/// `gridsize`; a few hundred points already reach machine precision.
pub fn momentum_average<F: Fn(f64) -> f64>(f: F, gridsize: usize) -> f64 {
    let n = gridsize.max(1);
    let step = 2.0 * PI / n as f64;
    let mut acc = 0.0;
    for m in 0..n {
        let k = -PI + (m as f64 + 0.5) * step;
        acc += f(k);
    }
    acc / n as f64
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn simpson_integrates_polynomials_exactly() {
        // Simpson is exact for cubics.
        let got = simpson(|x| 3.0 * x * x * x - x + 2.0, -1.0, 2.0, 8);
        let want = |x: f64| 0.75 * x.powi(4) - 0.5 * x * x + 2.0 * x;
        assert_abs_diff_eq!(got, want(2.0) - want(-1.0), epsilon = 1e-12);
    }

    #[test]
    fn simpson_empty_interval_is_zero() {
        assert_eq!(simpson(|x| x, 1.0, 1.0, 16), 0.0);
        assert_eq!(simpson(|x| x, 2.0, 1.0, 16), 0.0);
    }

    #[test]
    fn konno_density_normalizes() {
        let mass = konno_weighted_integral(|_| 1.0, -1.0, 1.0, DEFAULT_QUAD_PANELS);
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn konno_moments_match_closed_forms() {
        // ∫ x² f_K = 1 - 1/√2, ∫ x⁴ f_K = (8 - 5√2)/8, ∫ x⁶ f_K = (64 - 43√2)/64
        let m2 = konno_weighted_integral(|x| x * x, -1.0, 1.0, DEFAULT_QUAD_PANELS);
        let m4 = konno_weighted_integral(|x| x.powi(4), -1.0, 1.0, DEFAULT_QUAD_PANELS);
        let m6 = konno_weighted_integral(|x| x.powi(6), -1.0, 1.0, DEFAULT_QUAD_PANELS);
        assert_abs_diff_eq!(m2, 0.29289321881345254, epsilon = 1e-12);
        assert_abs_diff_eq!(m4, 0.11611652351681556, epsilon = 1e-12);
        assert_abs_diff_eq!(m6, 0.049825262780576720, epsilon = 1e-12);
    }

    #[test]
    fn konno_one_sided_first_moment() {
        // ∫_0^{1/√2} x f_K dx = 1/4 (antiderivative -atan(cos u)/π in the
        // substituted variable).
        let got = konno_weighted_integral(|x| x, 0.0, 1.0, DEFAULT_QUAD_PANELS);
        assert_abs_diff_eq!(got, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn konno_outside_support_is_zero() {
        assert_eq!(konno_weighted_integral(|_| 1.0, 0.9, 1.0, 64), 0.0);
    }

    #[test]
    fn momentum_average_of_trig_polynomials() {
        assert_abs_diff_eq!(momentum_average(|_| 1.0, 64), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(momentum_average(|k| k.cos(), 64), 0.0, epsilon = 1e-15);
        // cos²k averages to 1/2.
        assert_abs_diff_eq!(
            momentum_average(|k| k.cos().powi(2), 64),
            0.5,
            epsilon = 1e-15
        );
    }
}
