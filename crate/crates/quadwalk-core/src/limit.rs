//! The weak limit of the rescaled walk `X_t/t`: an atom at the origin plus
//! a polynomial-weighted arcsine-type density.
//!
//! The limit measure is `Δ δ₀(x) + (c₀ + c₁x + c₂x²) f_K(x) dx` with
//! `f_K(x) = 1/(π(1-x²)√(1-2x²))` supported on `(-1/√2, 1/√2)`. The atom
//! mass Δ and the coefficients are closed forms in the initial state; every
//! quantity here is also computable by an independent momentum-space
//! quadrature through the eigenvectors, which the tests exploit.

use crate::linalg::Complex;
use crate::quad::{konno_weighted_integral, momentum_average, DEFAULT_QUAD_PANELS};
use crate::spectral::hadamard_eigen;
use crate::walk::{InitialState, WalkState};
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

/// The arcsine-type density `f_K(x) = 1/(π(1-x²)√(1-2x²))` on
/// `(-1/√2, 1/√2)`, zero outside the open support.
pub fn konno_density(x: f64) -> f64 {
    if x.abs() >= FRAC_1_SQRT_2 {
        return 0.0;
    }
    1.0 / (PI * (1.0 - x * x) * (1.0 - 2.0 * x * x).sqrt())
}

/// Closed-form atom mass Δ of the rescaled weak limit.
pub fn delta_mass(init: &InitialState) -> f64 {
    let s = SQRT_2;
    let (a, b, g, d) = (init.alpha, init.beta, init.gamma, init.delta);
    1.0 - s / 4.0
        + 0.5
            * ((s - 2.0) * (b.norm_sqr() + d.norm_sqr())
                + (2.0 - s) * ((a - g) * (b.conj() - d.conj())).re
                + s * (a * g.conj()).re
                - (4.0 - 3.0 * s) * (b * d.conj()).re)
}

/// Atom mass by the independent route: the momentum average of the overlap
/// with the two flat eigenvalue branches,
/// `Δ = ∫ Σ_{j=1,2} |⟨v_j(k)|ψ₀⟩|² dk/2π`.
pub fn delta_mass_quadrature(init: &InitialState, gridsize: usize) -> f64 {
    let psi0 = init.as_vector();
    momentum_average(
        |k| {
            let sys = hadamard_eigen(k);
            sys.eigenvectors[0].inner(&psi0).norm_sqr()
                + sys.eigenvectors[1].inner(&psi0).norm_sqr()
        },
        gridsize,
    )
}

/// Closed-form polynomial weight coefficients `(c₀, c₁, c₂)` of the
/// absolutely continuous part.
///
/// The `c₂` quadratic-form uses `|β|² + |δ|²`; the variant with `|γ|²`
/// fails both the total-mass identity `Δ + ∫(c₀+c₁x+c₂x²)f_K = 1` and the
/// momentum-space moment route, so it is a misprint (see the dual-route
/// tests).
pub fn poly_coeffs(init: &InitialState) -> (f64, f64, f64) {
    let (a, b, g, d) = (init.alpha, init.beta, init.gamma, init.delta);
    let c0 = 0.5 - (a * g.conj() + b * d.conj()).re;
    let c1 = d.norm_sqr() - b.norm_sqr() + ((a - g) * (b.conj() + d.conj())).re;
    let c2 = b.norm_sqr() + d.norm_sqr() - 0.5
        + ((a - g) * (d.conj() - b.conj()) + a * g.conj() + 3.0 * b * d.conj()).re;
    (c0, c1, c2)
}

/// Rescaled weak limit of a walk: atom mass plus density coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitLaw {
    pub delta: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl LimitLaw {
    pub fn for_initial_state(init: &InitialState) -> Self {
        let (c0, c1, c2) = poly_coeffs(init);
        Self {
            delta: delta_mass(init),
            c0,
            c1,
            c2,
        }
    }

    /// Arbitrary law, for degenerate or synthetic comparisons.
    pub fn new(delta: f64, c0: f64, c1: f64, c2: f64) -> Self {
        Self { delta, c0, c1, c2 }
    }

    /// The absolutely continuous part `(c₀ + c₁x + c₂x²) f_K(x)`.
    pub fn density(&self, x: f64) -> f64 {
        (self.c0 + self.c1 * x + self.c2 * x * x) * konno_density(x)
    }

    /// `∫_a^b dμ`: integrates the density part (singularity-absorbing
    /// substitution) and adds the atom when `a ≤ 0 ≤ b`.
    pub fn cdf_between(&self, a: f64, b: f64) -> f64 {
        assert!(a <= b, "interval must be ordered");
        let atom = if a <= 0.0 && 0.0 <= b {
            self.delta
        } else {
            0.0
        };
        atom + konno_weighted_integral(
            |x| self.c0 + self.c1 * x + self.c2 * x * x,
            a,
            b,
            DEFAULT_QUAD_PANELS,
        )
    }
}

/// Group velocity `h_j(k) = Dλ_j(k)/λ_j(k)` of the ballistic eigenvalue
/// branches `j ∈ {3, 4}`; branch 3 gives `sin k/√(1+sin²k)` and branch 4
/// its negative.
///
/// Obtained by differentiating the eigenvalue phase once symbolically; the
/// finite-difference invariant test keeps the expression honest.
pub fn group_velocity(j: usize, k: f64) -> f64 {
    let base = k.sin() / (1.0 + k.sin() * k.sin()).sqrt();
    match j {
        3 => base,
        4 => -base,
        _ => panic!("group velocity is defined for branches 3 and 4, got {j}"),
    }
}

/// `lim E[(X_t/t)^r]` by momentum-space quadrature:
/// `0^r Δ + ∫ Σ_{j=3,4} h_j(k)^r |⟨v_j(k)|ψ₀⟩|² dk/2π`.
pub fn theoretical_moment(init: &InitialState, r: u32, gridsize: usize) -> f64 {
    let psi0 = init.as_vector();
    let atom = if r == 0 { delta_mass(init) } else { 0.0 };
    atom + momentum_average(
        |k| {
            let sys = hadamard_eigen(k);
            let h = group_velocity(3, k);
            h.powi(r as i32) * sys.eigenvectors[2].inner(&psi0).norm_sqr()
                + (-h).powi(r as i32) * sys.eigenvectors[3].inner(&psi0).norm_sqr()
        },
        gridsize,
    )
}

/// `lim E[(X_t/t)^r]` by the dual route: real-space quadrature of the limit
/// density, `0^r Δ + ∫ x^r (c₀ + c₁x + c₂x²) f_K(x) dx`.
pub fn x_space_moment(law: &LimitLaw, r: u32) -> f64 {
    let atom = if r == 0 { law.delta } else { 0.0 };
    atom + konno_weighted_integral(
        |x| x.powi(r as i32) * (law.c0 + law.c1 * x + law.c2 * x * x),
        -1.0,
        1.0,
        DEFAULT_QUAD_PANELS,
    )
}

/// The empirical rescaled moment `Σ_x (x/t)^r P(X_t = x)`.
pub fn empirical_rescaled_moment(state: &WalkState, r: u32) -> f64 {
    let t = state.time();
    assert!(t >= 1, "rescaling requires t >= 1");
    let dist = state.distribution();
    dist.support()
        .map(|x| (x as f64 / t as f64).powi(r as i32) * dist.prob(x))
        .sum()
}

/// Sup-distance between the empirical CDF of `X_t/t` and the limit CDF,
/// excluding a shrinking window around the atom.
///
/// The comparison grid sits halfway between lattice points, skipping
/// `|y| ≤ 1/√t`. The window must contain the atom's finite-`t` spread
/// (which occupies `O(1)` lattice sites around the origin, i.e. `O(1/t)` in
/// rescaled units) or the statistic converges to the stationary tail mass
/// instead of zero; `1/√t` shrinks while swallowing that cluster.
pub fn ks_distance(state: &WalkState, law: &LimitLaw) -> f64 {
    let t = state.time();
    assert!(t >= 1, "rescaling requires t >= 1");
    let dist = state.distribution();
    let window = 1.0 / (t as f64).sqrt();

    let mut cumulative = 0.0;
    let mut last_y = -1.0;
    let mut limit_cdf_at_last = 0.0;
    let mut sup = 0.0f64;
    for x in dist.support() {
        cumulative += dist.prob(x);
        let y = (x as f64 + 0.5) / t as f64;
        if y.abs() <= window {
            continue;
        }
        // advance the limit CDF incrementally; each strip is cheap
        let atom = if last_y < 0.0 && y >= 0.0 {
            law.delta
        } else {
            0.0
        };
        limit_cdf_at_last +=
            atom + konno_weighted_integral(|u| law.c0 + law.c1 * u + law.c2 * u * u, last_y, y, 64);
        last_y = y;
        sup = sup.max((cumulative - limit_cdf_at_last).abs());
    }
    sup
}

/// Limit CDF `∫_a^b {1 - (|α|² - |β|² + 2Re(αβ̄)) x} f_K(x) dx` of the
/// rescaled 2-state coined walk with the matching symmetric coin: the same
/// density family, but no atom.
pub fn two_state_limit_cdf(alpha2: Complex, beta2: Complex, a: f64, b: f64) -> f64 {
    konno_weighted_integral(
        |x| 1.0 - two_state_weight(alpha2, beta2) * x,
        a,
        b,
        DEFAULT_QUAD_PANELS,
    )
}

/// Pointwise limit density of the rescaled 2-state walk.
pub fn two_state_density(alpha2: Complex, beta2: Complex, x: f64) -> f64 {
    (1.0 - two_state_weight(alpha2, beta2) * x) * konno_density(x)
}

fn two_state_weight(alpha2: Complex, beta2: Complex) -> f64 {
    alpha2.norm_sqr() - beta2.norm_sqr() + 2.0 * (alpha2 * beta2.conj()).re
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::walk::{evolve, CoinParams};
    use approx::assert_abs_diff_eq;

    fn re(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn delta_mass_reference_values() {
        // 1/√2, 0, and 1 - √2/4 for γ = 1
        assert_abs_diff_eq!(
            delta_mass(&InitialState::symmetric()),
            FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            delta_mass(&InitialState::antisymmetric()),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            delta_mass(&InitialState::basis(2)),
            0.64644660940672624,
            epsilon = 1e-15
        );
    }

    #[test]
    fn delta_mass_matches_momentum_quadrature() {
        let inits = [
            InitialState::symmetric(),
            InitialState::basis(2),
            InitialState::new(
                Complex::new(0.5, -0.1),
                Complex::new(-0.3, 0.2),
                Complex::new(0.1, 0.6),
                Complex::new(0.48989794855663560, 0.0),
            )
            .unwrap(),
        ];
        for init in &inits {
            assert_abs_diff_eq!(
                delta_mass(init),
                delta_mass_quadrature(init, 1024),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn poly_coeffs_reference_values() {
        let (c0, c1, c2) = poly_coeffs(&InitialState::symmetric());
        assert_abs_diff_eq!(c0, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c1, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c2, 1.0, epsilon = 1e-15);

        let (c0, c1, c2) = poly_coeffs(&InitialState::basis(0));
        assert_abs_diff_eq!(c0, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c1, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c2, -0.5, epsilon = 1e-15);

        let (c0, c1, c2) = poly_coeffs(&InitialState::antisymmetric());
        assert_abs_diff_eq!(c0, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c1, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c2, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn konno_density_values() {
        assert_abs_diff_eq!(konno_density(0.0), 1.0 / PI, epsilon = 1e-15);
        assert_eq!(konno_density(0.8), 0.0);
        assert_eq!(konno_density(-0.8), 0.0);
        assert_eq!(konno_density(FRAC_1_SQRT_2), 0.0);
        let mass = konno_weighted_integral(|_| 1.0, -1.0, 1.0, DEFAULT_QUAD_PANELS);
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn limit_cdf_total_and_outside_mass() {
        let law = LimitLaw::for_initial_state(&InitialState::symmetric());
        assert_abs_diff_eq!(law.cdf_between(-1.0, 1.0), 1.0, epsilon = 1e-8);
        assert_eq!(law.cdf_between(0.9, 1.0), 0.0);
    }

    #[test]
    fn limit_cdf_symmetric_split() {
        // c₁ = 0 and even density: equal halves (1 - 1/√2)/2 on each side
        let law = LimitLaw::for_initial_state(&InitialState::symmetric());
        let left = law.cdf_between(-1.0, -1e-12);
        let right = law.cdf_between(1e-12, 1.0);
        let half = (1.0 - FRAC_1_SQRT_2) / 2.0;
        assert_abs_diff_eq!(left, half, epsilon = 1e-9);
        assert_abs_diff_eq!(right, half, epsilon = 1e-9);
    }

    #[test]
    fn normalization_for_paper_states() {
        for init in [
            InitialState::symmetric(),
            InitialState::antisymmetric(),
            InitialState::basis(2),
            InitialState::basis(3),
        ] {
            let law = LimitLaw::for_initial_state(&init);
            let mass = konno_weighted_integral(
                |x| law.c0 + law.c1 * x + law.c2 * x * x,
                -1.0,
                1.0,
                DEFAULT_QUAD_PANELS,
            );
            assert_abs_diff_eq!(law.delta + mass, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn group_velocity_properties() {
        assert_abs_diff_eq!(group_velocity(3, 0.0), 0.0, epsilon = 1e-15);
        for n in 0..50 {
            let k = -PI + n as f64 * 0.128;
            assert_abs_diff_eq!(group_velocity(3, k), -group_velocity(4, k), epsilon = 1e-15);
            assert!(group_velocity(3, k).abs() < FRAC_1_SQRT_2 + 1e-12);
        }
        // supremum of |h₃| over a scan reaches 1/√2
        let max = (0..20000)
            .map(|n| group_velocity(3, -PI + n as f64 * (2.0 * PI / 20000.0)).abs())
            .fold(0.0, f64::max);
        assert_abs_diff_eq!(max, FRAC_1_SQRT_2, epsilon = 1e-6);
    }

    #[test]
    fn group_velocity_matches_finite_differences() {
        // h_j = i λ'_j/λ_j; central differences on the eigenvalue phase
        let step = 1e-5;
        for n in 0..200 {
            let k = -3.0 + n as f64 * 0.03;
            let lam = |k: f64| hadamard_eigen(k).eigenvalues[2];
            let derivative = (lam(k + step) - lam(k - step)) / (2.0 * step);
            let fd = (Complex::new(0.0, 1.0) * derivative / lam(k)).re;
            assert_abs_diff_eq!(group_velocity(3, k), fd, epsilon = 1e-7);
        }
    }

    #[test]
    #[should_panic(expected = "branches 3 and 4")]
    fn group_velocity_rejects_flat_branches() {
        group_velocity(1, 0.3);
    }

    #[test]
    fn zeroth_moment_is_total_mass() {
        for init in [InitialState::symmetric(), InitialState::basis(1)] {
            assert_abs_diff_eq!(theoretical_moment(&init, 0, 512), 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn second_moment_of_symmetric_state() {
        // density is x²f_K, so the r = 2 moment is ∫x⁴f_K = (8-5√2)/8
        let init = InitialState::symmetric();
        let want = 0.11611652351681556;
        assert_abs_diff_eq!(theoretical_moment(&init, 2, 1024), want, epsilon = 1e-8);
        let law = LimitLaw::for_initial_state(&init);
        assert_abs_diff_eq!(x_space_moment(&law, 2), want, epsilon = 1e-10);
    }

    #[test]
    fn moment_routes_agree() {
        let inits = [
            InitialState::antisymmetric(),
            InitialState::basis(3),
            InitialState::new(
                Complex::new(0.2, 0.4),
                Complex::new(-0.5, 0.1),
                Complex::new(0.3, -0.3),
                Complex::new(0.42426406871192851, 0.42426406871192851),
            )
            .unwrap(),
        ];
        for init in &inits {
            let law = LimitLaw::for_initial_state(init);
            for r in 0..=4u32 {
                assert_abs_diff_eq!(
                    theoretical_moment(init, r, 1024),
                    x_space_moment(&law, r),
                    epsilon = 1e-6
                );
            }
        }
    }

    #[test]
    fn empirical_moment_basics() {
        let state = evolve(&InitialState::symmetric(), &CoinParams::hadamard(), 64).unwrap();
        assert_abs_diff_eq!(empirical_rescaled_moment(&state, 0), 1.0, epsilon = 1e-10);
        // distribution symmetry of the symmetric state kills odd moments
        assert_abs_diff_eq!(empirical_rescaled_moment(&state, 1), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn ks_distance_degenerate_localized_walk() {
        // swap coin (a = d = 1): a walker started in the 0↔2 subspace
        // oscillates between two sites; all mass stays at the origin at even
        // times, matching a pure-atom law exactly away from the window.
        let coin = CoinParams::new(re(1.0), re(0.0), re(0.0), re(1.0)).unwrap();
        let state = evolve(&InitialState::basis(2), &coin, 50).unwrap();
        assert_abs_diff_eq!(state.return_probability(), 1.0, epsilon = 1e-12);
        let law = LimitLaw::new(1.0, 0.0, 0.0, 0.0);
        assert!(ks_distance(&state, &law) < 1e-10);
    }

    #[test]
    fn two_state_mass_is_one_for_any_state() {
        let pairs = [
            (re(FRAC_1_SQRT_2), Complex::new(0.0, FRAC_1_SQRT_2)),
            (re(1.0), re(0.0)),
            (Complex::new(0.6, 0.0), Complex::new(0.0, -0.8)),
        ];
        for (a2, b2) in pairs {
            assert_abs_diff_eq!(two_state_limit_cdf(a2, b2, -1.0, 1.0), 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn two_state_one_sided_mass_for_basis_state() {
        // α = 1: ∫₀^{1/√2} (1 - x) f_K dx = 1/2 - 1/4 = 1/4
        assert_abs_diff_eq!(
            two_state_limit_cdf(re(1.0), re(0.0), 0.0, 1.0),
            0.25,
            epsilon = 1e-8
        );
    }

    #[test]
    fn two_state_density_support() {
        let (a2, b2) = (re(FRAC_1_SQRT_2), Complex::new(0.0, FRAC_1_SQRT_2));
        assert_eq!(two_state_density(a2, b2, 0.9), 0.0);
        assert_abs_diff_eq!(two_state_density(a2, b2, 0.0), 1.0 / PI, epsilon = 1e-14);
        // purely imaginary cross term: symmetric density
        assert_abs_diff_eq!(
            two_state_density(a2, b2, 0.3),
            two_state_density(a2, b2, -0.3),
            epsilon = 1e-14
        );
    }
}
