//! Momentum-space representation of the walk and the stationary
//! (localization) distribution for the Hadamard coin.
//!
//! The Fourier transform turns the step into multiplication by
//! `Û(k) = R(k)·U` with `R(k) = diag(e^{ik}, e^{ik}, e^{-ik}, e^{-ik})`.
//! For the Hadamard coin, `Û(k)` has two flat eigenvalue branches `±1` —
//! these carry the localized part of the walk — and a conjugate pair
//! `λ_{3,4}(k) = (-cos k ± i√(1+sin²k))/√2` that transports mass
//! ballistically. The analytic eigenvectors below feed both the stationary
//! distribution here and the weak-limit quadratures in [`crate::limit`].

use crate::linalg::{C4Matrix, C4Vector, Complex};
use crate::walk::{build_coin, CoinParams, InitialState, WalkState};
use std::f64::consts::{PI, SQRT_2};
use thiserror::Error;

/// `3 - 2√2`, the geometric decay ratio of the stationary tails per site.
pub const TAIL_RATIO: f64 = 3.0 - 2.0 * SQRT_2;

/// Below this raw squared-norm the analytic eigenvector display is treated
/// as degenerate and the eigenvector is recovered from the null space of
/// `Û(k) - λI` instead.
const DEGENERATE_NORM_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("grid size {gridsize} aliases a walk of {time} steps (need >= 2t + 2)")]
    GridTooSmall { gridsize: usize, time: usize },
    #[error("grid size {gridsize} must be even")]
    OddGridSize { gridsize: usize },
}

/// Time-parity of the limit being requested; the stationary values differ
/// between even and odd times and the mixed limit does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// The position-shift phase `R(k) = diag(e^{ik}, e^{ik}, e^{-ik}, e^{-ik})`.
pub fn rotation(k: f64) -> C4Matrix {
    let e = Complex::from_polar(1.0, k);
    C4Matrix::diagonal([e, e, e.conj(), e.conj()])
}

/// The momentum-space step operator `Û(k) = R(k) · U`.
pub fn hat_u(coin: &CoinParams, k: f64) -> C4Matrix {
    rotation(k).mat_mul(&build_coin(coin))
}

/// Eigendecomposition of `Û(k)` for the Hadamard coin at one momentum.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub k: f64,
    /// `[1, -1, λ₃(k), λ₄(k)]`, all unit modulus.
    pub eigenvalues: [Complex; 4],
    /// Unit-norm eigenvectors matching `eigenvalues`.
    pub eigenvectors: [C4Vector; 4],
    /// Squared norms of the raw (pre-normalization) analytic vectors.
    pub normalizers: [f64; 4],
}

/// Analytic eigensystem of the Hadamard-coin `Û(k)`.
///
/// The raw eigenvector for eigenvalue `λ` is
/// `[e^{ik}(√2λ+e^{ik})(λe^{ik}+√2), e^{2ik}(λe^{ik}+√2),
///   λ(√2λ+e^{ik})(√2λe^{ik}+1), λ(√2λ+e^{ik})]`,
/// normalized numerically. Since `|e^{ik}| = 1 ≠ √2`, the last component
/// never vanishes, so the display stays non-degenerate for every real `k`;
/// the null-space fallback guards the isolated-degeneracy case anyway.
pub fn hadamard_eigen(k: f64) -> EigenSystem {
    let disc = (1.0 + k.sin() * k.sin()).sqrt();
    let lambda3 = Complex::new(-k.cos() / SQRT_2, disc / SQRT_2);
    let eigenvalues = [
        Complex::new(1.0, 0.0),
        Complex::new(-1.0, 0.0),
        lambda3,
        lambda3.conj(),
    ];

    let e = Complex::from_polar(1.0, k);
    let s2 = Complex::new(SQRT_2, 0.0);
    let mut eigenvectors = [C4Vector::ZERO; 4];
    let mut normalizers = [0.0; 4];
    for (j, &lambda) in eigenvalues.iter().enumerate() {
        let raw = C4Vector::new(
            e * (s2 * lambda + e) * (lambda * e + s2),
            e * e * (lambda * e + s2),
            lambda * (s2 * lambda + e) * (s2 * lambda * e + 1.0),
            lambda * (s2 * lambda + e),
        );
        let norm_sqr = raw.norm_sqr();
        normalizers[j] = norm_sqr;
        eigenvectors[j] = if norm_sqr.sqrt() < DEGENERATE_NORM_TOL {
            let mut shifted = hat_u(&CoinParams::hadamard(), k);
            for i in 0..4 {
                shifted.0[i][i] -= lambda;
            }
            null_space_vector(&shifted)
        } else {
            raw.scale(Complex::new(1.0 / norm_sqr.sqrt(), 0.0))
        };
    }

    EigenSystem {
        k,
        eigenvalues,
        eigenvectors,
        normalizers,
    }
}

/// Unit vector in the null space of a (numerically) rank-deficient 4×4
/// matrix, via Gauss-Jordan elimination with partial pivoting.
pub(crate) fn null_space_vector(m: &C4Matrix) -> C4Vector {
    const PIVOT_TOL: f64 = 1e-10;
    let mut a = m.0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..4 {
        let (best_row, best_mag) = (row..4)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if best_mag < PIVOT_TOL {
            continue;
        }
        a.swap(row, best_row);
        for r in 0..4 {
            if r != row {
                let factor = a[r][col] / a[row][col];
                let pivot_row = a[row];
                for (entry, &pivot) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *entry -= factor * pivot;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == 4 {
            break;
        }
    }
    let free_col = (0..4)
        .find(|c| pivots.iter().all(|&(_, pc)| pc != *c))
        .expect("matrix has full rank; no null vector exists");
    let mut v = C4Vector::ZERO;
    v.0[free_col] = Complex::new(1.0, 0.0);
    for &(r, c) in &pivots {
        v.0[c] = -a[r][free_col] / a[r][c];
    }
    v.scale(Complex::new(1.0 / v.norm(), 0.0))
}

/// Evolves `t` steps in momentum space on a uniform `gridsize`-point grid
/// and inverts the transform.
///
/// Because the walk's support after `t` steps is `[-t, t]`, any even grid
/// with at least `2t + 2` points reproduces the direct evolution exactly up
/// to roundoff (the aliasing images fall outside the support).
pub fn fourier_evolve(
    init: &InitialState,
    coin: &CoinParams,
    t: usize,
    gridsize: usize,
) -> Result<WalkState, SpectralError> {
    if !gridsize.is_multiple_of(2) {
        return Err(SpectralError::OddGridSize { gridsize });
    }
    if gridsize < 2 * t + 2 {
        return Err(SpectralError::GridTooSmall { gridsize, time: t });
    }
    let n = gridsize;
    let psi0 = init.as_vector();
    let mut waves: Vec<(f64, C4Vector)> = Vec::with_capacity(n);
    for m in 0..n {
        let k = -PI + 2.0 * PI * m as f64 / n as f64;
        let u = hat_u(coin, k);
        let mut v = psi0;
        for _ in 0..t {
            v = u.mat_vec(&v);
        }
        waves.push((k, v));
    }
    let inv_n = Complex::new(1.0 / n as f64, 0.0);
    let mut amplitudes = vec![C4Vector::ZERO; 2 * t + 1];
    for (i, slot) in amplitudes.iter_mut().enumerate() {
        let x = i as i64 - t as i64;
        let mut acc = C4Vector::ZERO;
        for (k, v) in &waves {
            acc = acc + v.scale(Complex::from_polar(1.0, k * x as f64));
        }
        *slot = acc.scale(inv_n);
    }
    Ok(WalkState::from_amplitudes(t, amplitudes))
}

// Coefficient matrices of the t → ∞ amplitude limits at x = 0, ±1 (the
// prefactor (1 ± (-1)^t)/8 is applied separately per parity).
fn origin_limit_matrix() -> C4Matrix {
    let s = SQRT_2;
    let re = |x: f64| Complex::new(x, 0.0);
    C4Matrix::from_rows([
        [re(4.0 - s), re(2.0 - s), re(s), re(-(2.0 - s))],
        [re(2.0 - s), re(s), re(-(2.0 - s)), re(-(4.0 - 3.0 * s))],
        [re(s), re(-(2.0 - s)), re(4.0 - s), re(2.0 - s)],
        [re(-(2.0 - s)), re(-(4.0 - 3.0 * s)), re(2.0 - s), re(s)],
    ])
}

fn right_neighbor_limit_matrix() -> C4Matrix {
    let s = SQRT_2;
    let re = |x: f64| Complex::new(x, 0.0);
    C4Matrix::from_rows([
        [re(2.0 - s), re(s), re(-(2.0 - s)), re(-(4.0 - 3.0 * s))],
        [
            re(4.0 - 3.0 * s),
            re(-(2.0 - s)),
            re(-(4.0 - 3.0 * s)),
            re(-(10.0 - 7.0 * s)),
        ],
        [re(-(2.0 - 3.0 * s)), re(s), re(2.0 - s), re(4.0 - 3.0 * s)],
        [re(s), re(-(2.0 - s)), re(s), re(-(2.0 - s))],
    ])
}

fn left_neighbor_limit_matrix() -> C4Matrix {
    let s = SQRT_2;
    let re = |x: f64| Complex::new(x, 0.0);
    C4Matrix::from_rows([
        [re(2.0 - s), re(4.0 - 3.0 * s), re(-(2.0 - 3.0 * s)), re(s)],
        [re(s), re(-(2.0 - s)), re(s), re(-(2.0 - s))],
        [re(-(2.0 - s)), re(-(4.0 - 3.0 * s)), re(2.0 - s), re(s)],
        [
            re(-(4.0 - 3.0 * s)),
            re(-(10.0 - 7.0 * s)),
            re(4.0 - 3.0 * s),
            re(-(2.0 - s)),
        ],
    ])
}

/// Linear form whose squared modulus is the right-tail weight
/// `K(α, β, γ, δ)`.
fn right_tail_form(init: &InitialState) -> Complex {
    let s = SQRT_2;
    (s - 1.0) * init.alpha + init.beta - (s - 1.0) * init.gamma + TAIL_RATIO * init.delta
}

/// Linear form whose squared modulus is the left-tail weight
/// `K(α, -δ, γ, -β)`.
fn left_tail_form(init: &InitialState) -> Complex {
    let s = SQRT_2;
    (s - 1.0) * init.alpha - TAIL_RATIO * init.beta - (s - 1.0) * init.gamma - init.delta
}

/// The `t → ∞` limits of the amplitude `ψ_t(x)` along even and odd times,
/// for the Hadamard coin. Positions with the wrong parity get the zero
/// vector.
pub fn stationary_amplitude(x: i64, init: &InitialState) -> (C4Vector, C4Vector) {
    let v = init.as_vector();
    let quarter = Complex::new(0.25, 0.0);
    match x {
        0 => (
            origin_limit_matrix().mat_vec(&v).scale(quarter),
            C4Vector::ZERO,
        ),
        1 => (
            C4Vector::ZERO,
            right_neighbor_limit_matrix().mat_vec(&v).scale(quarter),
        ),
        -1 => (
            C4Vector::ZERO,
            left_neighbor_limit_matrix().mat_vec(&v).scale(quarter),
        ),
        x if x >= 2 => {
            let s = SQRT_2;
            let w = C4Vector::new(
                Complex::new(1.0 - s, 0.0),
                Complex::new(TAIL_RATIO, 0.0),
                Complex::new(s - 1.0, 0.0),
                Complex::new(1.0, 0.0),
            );
            let prefactor =
                right_tail_form(init) * ((s - 1.0).powi(x as i32) / (4.0 * s * TAIL_RATIO));
            tail_limits(x, w, prefactor)
        }
        x => {
            let s = SQRT_2;
            let w = C4Vector::new(
                Complex::new(s - 1.0, 0.0),
                Complex::new(1.0, 0.0),
                Complex::new(1.0 - s, 0.0),
                Complex::new(TAIL_RATIO, 0.0),
            );
            let prefactor =
                left_tail_form(init) * (-(s - 1.0).powi(-x as i32) / (4.0 * s * TAIL_RATIO));
            tail_limits(x, w, prefactor)
        }
    }
}

// Resolves the ((-1)^x + (-1)^t) factor of the |x| >= 2 displays per parity.
fn tail_limits(x: i64, direction: C4Vector, prefactor: Complex) -> (C4Vector, C4Vector) {
    if x % 2 == 0 {
        (direction.scale(prefactor * 2.0), C4Vector::ZERO)
    } else {
        (C4Vector::ZERO, direction.scale(prefactor * -2.0))
    }
}

/// Limiting even-time return probability `lim P(X_{2t} = 0)`.
pub fn stationary_return_probability(init: &InitialState) -> f64 {
    let s = SQRT_2;
    let (a, b, g, d) = (init.alpha, init.beta, init.gamma, init.delta);
    (2.0 - s) - (s - 1.0) * (b.norm_sqr() + d.norm_sqr())
        + 2.0 * (s - 1.0) * (a * g.conj()).re
        + TAIL_RATIO * ((a - g) * (b.conj() - d.conj())).re
}

/// Quadratic functional giving the stationary weight at `x = ±1` (odd
/// times); the `x = -1` value is `m_func(γ, δ, α, β)`.
pub fn m_func(a: Complex, b: Complex, g: Complex, d: Complex) -> f64 {
    let s = SQRT_2;
    (8.0 - 5.0 * s) / 2.0 * a.norm_sqr()
        + (2.0 - s) / 2.0 * b.norm_sqr()
        + TAIL_RATIO * g.norm_sqr()
        + (17.0 - 12.0 * s) * d.norm_sqr()
        + (s - 1.0) * (a * b.conj()).re
        - (12.0 - 9.0 * s) / 2.0 * (a * g.conj()).re
        - (30.0 - 21.0 * s) / 2.0 * (a * d.conj()).re
        + (4.0 - 3.0 * s) / 2.0 * (b * g.conj()).re
        + (10.0 - 7.0 * s) / 2.0 * (b * d.conj()).re
        + (14.0 - 10.0 * s) * (g * d.conj()).re
}

/// Quadratic functional giving the stationary tail weight; the right tail
/// uses `k_func(α, β, γ, δ)` and the left tail `k_func(α, -δ, γ, -β)`.
pub fn k_func(a: Complex, b: Complex, g: Complex, d: Complex) -> f64 {
    let s = SQRT_2;
    TAIL_RATIO
        + 2.0 * (s - 1.0) * b.norm_sqr()
        + 2.0 * (7.0 - 5.0 * s) * d.norm_sqr()
        + 2.0
            * ((s - 1.0) * ((a - g) * b.conj()).re - (7.0 - 5.0 * s) * ((a - g) * d.conj()).re
                + TAIL_RATIO * (b * d.conj() - a * g.conj()).re)
}

/// Full piecewise stationary distribution: `lim P(X_t = x)` along even or
/// odd times.
pub fn stationary_probability(x: i64, parity: Parity, init: &InitialState) -> f64 {
    let (a, b, g, d) = (init.alpha, init.beta, init.gamma, init.delta);
    let x_even = x % 2 == 0;
    let tail = |x: i64| {
        let weight = if x > 0 {
            k_func(a, b, g, d)
        } else {
            k_func(a, -d, g, -b)
        };
        TAIL_RATIO.powi((x.abs() - 1) as i32) * weight
    };
    match parity {
        Parity::Even => match x {
            0 => stationary_return_probability(init),
            _ if x_even => tail(x),
            _ => 0.0,
        },
        Parity::Odd => match x {
            1 => m_func(a, b, g, d),
            -1 => m_func(g, d, a, b),
            _ if x_even => 0.0,
            _ => tail(x),
        },
    }
}

/// Total stationary mass `Σ_x lim P(X_t = x)` along one parity class
/// (the two classes carry the same total, namely the weak-limit atom Δ).
///
/// Closed form: the tails are geometric with ratio `(3-2√2)²` per two
/// sites, so `Σ_{x=2,4,…} (3-2√2)^{x-1} = √2/8` and the even-time total is
/// `P₀ + (√2/8)(K₊ + K₋)`.
pub fn stationary_total(init: &InitialState) -> f64 {
    let (a, b, g, d) = (init.alpha, init.beta, init.gamma, init.delta);
    let even_tail_sum = SQRT_2 / 8.0;
    stationary_return_probability(init) + even_tail_sum * (k_func(a, b, g, d) + k_func(a, -d, g, -b))
}
