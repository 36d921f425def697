//! Direct-space time evolution of the 4-state walk.
//!
//! One step applies the coin `U = C̃₂C̃₁` and then shifts: the top two
//! chirality components move left, the bottom two move right. Splitting `U`
//! by rows into `P` (rows 0-1) and `Q` (rows 2-3) turns the step into
//! `ψ_{t+1}(x) = P ψ_t(x+1) + Q ψ_t(x-1)`.

use crate::linalg::{C4Matrix, C4Vector, Complex};
use thiserror::Error;

/// Tolerance for accepting a coin block / initial state at construction.
/// Inputs farther out are rejected rather than renormalized, so caller bugs
/// surface immediately.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Largest time accepted by [`evolve`]; bounds the dense amplitude buffer.
pub const MAX_EVOLVE_TIME: usize = 1 << 16;

/// Largest time accepted by [`path_sum_oracle`] (2^t path enumeration).
pub const MAX_PATH_SUM_TIME: usize = 20;

#[derive(Debug, Error, PartialEq)]
pub enum WalkError {
    #[error("coin block [[a,c],[b,d]] is not unitary (deviation {deviation:.3e})")]
    NonUnitaryCoin { deviation: f64 },
    #[error("initial state has squared norm {norm_sqr} (must be 1)")]
    NotNormalized { norm_sqr: f64 },
    #[error("time {requested} exceeds the evolution budget {budget}")]
    TimeBudget { requested: usize, budget: usize },
    #[error("path enumeration supports t <= {limit}, got {requested}")]
    PathEnumeration { requested: usize, limit: usize },
    #[error("memory key (n2={n2}, n1={n1}) must satisfy |n1 - n2| = 1")]
    InvalidMemoryKey { n2: i64, n1: i64 },
    #[error("coin bit {p} must be 0 or 1")]
    InvalidCoinBit { p: u8 },
}

/// The four amplitudes `a, b, c, d` of the underlying 2×2 coin block
/// `[[a, c], [b, d]]`; the block must be unitary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinParams {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl CoinParams {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self, WalkError> {
        let coin = Self::new_unchecked(a, b, c, d);
        let deviation = coin.block_deviation();
        if deviation > CONSTRUCTION_TOL {
            return Err(WalkError::NonUnitaryCoin { deviation });
        }
        Ok(coin)
    }

    /// Skips the unitarity check; used for fault injection in verification.
    pub fn new_unchecked(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Self { a, b, c, d }
    }

    /// The coin with `a = b = c = 1/√2`, `d = -1/√2`.
    pub fn hadamard() -> Self {
        let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new_unchecked(h, h, h, -h)
    }

    /// Max entry deviation of `B·B†` from the identity for the 2×2 block.
    pub fn block_deviation(&self) -> f64 {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        // rows of B·B† for B = [[a, c], [b, d]]
        let e00 = a * a.conj() + c * c.conj() - 1.0;
        let e01 = a * b.conj() + c * d.conj();
        let e11 = b * b.conj() + d * d.conj() - 1.0;
        e00.norm().max(e01.norm()).max(e11.norm())
    }
}

/// The four origin amplitudes `(α, β, γ, δ)`; must have unit total norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialState {
    pub alpha: Complex,
    pub beta: Complex,
    pub gamma: Complex,
    pub delta: Complex,
}

impl InitialState {
    pub fn new(
        alpha: Complex,
        beta: Complex,
        gamma: Complex,
        delta: Complex,
    ) -> Result<Self, WalkError> {
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr() + delta.norm_sqr();
        if (norm_sqr - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(WalkError::NotNormalized { norm_sqr });
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    /// `(1/2, 1/2, 1/2, 1/2)` — the localizing reference state.
    pub fn symmetric() -> Self {
        let h = Complex::new(0.5, 0.0);
        Self {
            alpha: h,
            beta: h,
            gamma: h,
            delta: h,
        }
    }

    /// `(1/2, -1/2, -1/2, 1/2)` — the reference state without localization.
    pub fn antisymmetric() -> Self {
        let h = Complex::new(0.5, 0.0);
        Self {
            alpha: h,
            beta: -h,
            gamma: -h,
            delta: h,
        }
    }

    /// Unit amplitude on chirality `i` (0..4).
    pub fn basis(i: usize) -> Self {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        let mut v = [zero; 4];
        v[i] = one;
        Self {
            alpha: v[0],
            beta: v[1],
            gamma: v[2],
            delta: v[3],
        }
    }

    pub fn as_vector(&self) -> C4Vector {
        C4Vector::new(self.alpha, self.beta, self.gamma, self.delta)
    }
}

/// The one-step coin `U = C̃₂C̃₁` with rows
/// `[0,0,a,c] / [b,d,0,0] / [a,c,0,0] / [0,0,b,d]`.
pub fn build_coin(coin: &CoinParams) -> C4Matrix {
    let z = Complex::new(0.0, 0.0);
    let (a, b, c, d) = (coin.a, coin.b, coin.c, coin.d);
    C4Matrix::from_rows([[z, z, a, c], [b, d, z, z], [a, c, z, z], [z, z, b, d]])
}

/// Splits `u` into the left-movement weight `P` (rows 0-1 kept) and the
/// right-movement weight `Q` (rows 2-3 kept), so that `P + Q = u`.
pub fn split_coin(u: &C4Matrix) -> (C4Matrix, C4Matrix) {
    let mut p = *u;
    let mut q = *u;
    let zero_row = [Complex::new(0.0, 0.0); 4];
    p.0[2] = zero_row;
    p.0[3] = zero_row;
    q.0[0] = zero_row;
    q.0[1] = zero_row;
    (p, q)
}

/// Walk amplitudes at a fixed time, stored densely over the support
/// `[-t, t]` (index `x + t`). Positions with `x + t` odd are identically 0.
#[derive(Clone, Debug)]
pub struct WalkState {
    time: usize,
    amplitudes: Vec<C4Vector>,
}

impl WalkState {
    /// The
    /// time-zero state: `init` at the origin, nothing elsewhere.
    pub fn initial(init: &InitialState) -> Self {
        Self {
            time: 0,
            amplitudes: vec![init.as_vector()],
        }
    }

    /// Builds a state from a dense amplitude buffer over `[-t, t]`.
    pub(crate) fn from_amplitudes(time: usize, amplitudes: Vec<C4Vector>) -> Self {
        debug_assert_eq!(amplitudes.len(), 2 * time + 1);
        Self { time, amplitudes }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    /// Amplitude at position `x` (zero outside the support).
    pub fn amplitude(&self, x: i64) -> C4Vector {
        let t = self.time as i64;
        if x < -t || x > t {
            return C4Vector::ZERO;
        }
        self.amplitudes[(x + t) as usize]
    }

    /// Positions `-t ..= t`.
    pub fn support(&self) -> impl Iterator<Item = i64> {
        let t = self.time as i64;
        -t..=t
    }

    pub fn total_probability(&self) -> f64 {
        self.amplitudes.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn distribution(&self) -> ProbabilityDistribution {
        ProbabilityDistribution {
            time: self.time,
            probs: self.amplitudes.iter().map(|v| v.norm_sqr()).collect(),
        }
    }

    pub fn return_probability(&self) -> f64 {
        self.amplitude(0).norm_sqr()
    }
}

/// Probabilities `P(X_t = x) = ‖ψ_t(x)‖²` over the support `[-t, t]`.
#[derive(Clone, Debug)]
pub struct ProbabilityDistribution {
    time: usize,
    probs: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn time(&self) -> usize {
        self.time
    }

    pub fn prob(&self, x: i64) -> f64 {
        let t = self.time as i64;
        if x < -t || x > t {
            return 0.0;
        }
        self.probs[(x + t) as usize]
    }

    pub fn support(&self) -> impl Iterator<Item = i64> {
        let t = self.time as i64;
        -t..=t
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// One time step: `ψ'(x) = P ψ(x+1) + Q ψ(x-1)`.
pub fn step(state: &WalkState, p: &C4Matrix, q: &C4Matrix) -> WalkState {
    let t = state.time;
    let old_len = 2 * t + 1;
    let mut amplitudes = vec![C4Vector::ZERO; old_len + 2];
    for i in (0..old_len).step_by(2) {
        // Amplitude lives only where x and t share parity, i.e. x + t even.
        let v = &state.amplitudes[i];
        // old position x = i - t maps to new indices (x∓1) + (t+1) = i, i+2
        amplitudes[i] = amplitudes[i] + p.mat_vec(v);
        amplitudes[i + 2] = amplitudes[i + 2] + q.mat_vec(v);
    }
    WalkState {
        time: t + 1,
        amplitudes,
    }
}

/// `t`-fold application of [`step`] starting from `init` at the origin.
pub fn evolve(init: &InitialState, coin: &CoinParams, t: usize) -> Result<WalkState, WalkError> {
    if t > MAX_EVOLVE_TIME {
        return Err(WalkError::TimeBudget {
            requested: t,
            budget: MAX_EVOLVE_TIME,
        });
    }
    let (p, q) = split_coin(&build_coin(coin));
    let mut state = WalkState::initial(init);
    for _ in 0..t {
        state = step(&state, &p, &q);
    }
    Ok(state)
}

/// Convenience free function mirroring [`WalkState::distribution`].
pub fn distribution(state: &WalkState) -> ProbabilityDistribution {
    state.distribution()
}

/// Convenience free function mirroring [`WalkState::return_probability`].
pub fn return_probability(state: &WalkState) -> f64 {
    state.return_probability()
}

/// Brute-force oracle: sums, over every length-`t` word in `{P, Q}` whose
/// net displacement (#Q - #P) equals `x`, the word applied to the initial
/// amplitude. Exponential in `t`; intended purely as a test reference.
pub fn path_sum_oracle(
    init: &InitialState,
    coin: &CoinParams,
    t: usize,
    x: i64,
) -> Result<C4Vector, WalkError> {
    if t > MAX_PATH_SUM_TIME {
        return Err(WalkError::PathEnumeration {
            requested: t,
            limit: MAX_PATH_SUM_TIME,
        });
    }
    let (p, q) = split_coin(&build_coin(coin));
    let psi0 = init.as_vector();
    if t == 0 {
        return Ok(if x == 0 { psi0 } else { C4Vector::ZERO });
    }
    let mut acc = C4Vector::ZERO;
    for word in 0u64..(1u64 << t) {
        let rights = word.count_ones() as i64;
        if 2 * rights - t as i64 != x {
            continue;
        }
        let mut v = psi0;
        for bit in 0..t {
            v = if word >> bit & 1 == 1 {
                q.mat_vec(&v)
            } else {
                p.mat_vec(&v)
            };
        }
        acc = acc + v;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn re(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn build_coin_hadamard_matches_display() {
        let u = build_coin(&CoinParams::hadamard());
        let h = FRAC_1_SQRT_2;
        let want = C4Matrix::from_rows([
            [re(0.0), re(0.0), re(h), re(h)],
            [re(h), re(-h), re(0.0), re(0.0)],
            [re(h), re(h), re(0.0), re(0.0)],
            [re(0.0), re(0.0), re(h), re(-h)],
        ]);
        assert!(u.max_abs_diff(&want) < 1e-15);
        assert!(u.is_unitary(1e-12));
    }

    #[test]
    fn build_coin_identity_block_gives_swap() {
        // a = d = 1, b = c = 0 leaves only the 0↔2 exchange.
        let coin = CoinParams::new(re(1.0), re(0.0), re(0.0), re(1.0)).unwrap();
        let u = build_coin(&coin);
        let z = re(0.0);
        let o = re(1.0);
        let want = C4Matrix::from_rows([[z, z, o, z], [z, o, z, z], [o, z, z, z], [z, z, z, o]]);
        assert_eq!(u, want);
    }

    #[test]
    fn build_coin_antidiagonal_block() {
        // a = d = 0, b = c = 1 (verified by hand-multiplying the two factors).
        let coin = CoinParams::new(re(0.0), re(1.0), re(1.0), re(0.0)).unwrap();
        let u = build_coin(&coin);
        let z = re(0.0);
        let o = re(1.0);
        let want = C4Matrix::from_rows([[z, z, z, o], [o, z, z, z], [z, o, z, z], [z, z, o, z]]);
        assert_eq!(u, want);
    }

    #[test]
    fn coin_rejects_non_unitary_block() {
        let err = CoinParams::new(re(1.0), re(1.0), re(0.0), re(1.0)).unwrap_err();
        assert!(matches!(err, WalkError::NonUnitaryCoin { .. }));
    }

    #[test]
    fn initial_state_rejects_bad_norm() {
        let err = InitialState::new(re(1.0), re(1.0), re(0.0), re(0.0)).unwrap_err();
        assert!(matches!(err, WalkError::NotNormalized { .. }));
    }

    #[test]
    fn split_coin_reconstructs_and_projects() {
        let u = build_coin(&CoinParams::hadamard());
        let (p, q) = split_coin(&u);
        assert_eq!(p + q, u);
        // P keeps rows 0-1, Q keeps rows 2-3.
        assert_eq!(p.0[2], [re(0.0); 4]);
        assert_eq!(q.0[0], [re(0.0); 4]);
        assert_eq!(p.0[0], u.0[0]);
        assert_eq!(q.0[3], u.0[3]);

        let (pi, qi) = split_coin(&C4Matrix::identity());
        let mut want_p = C4Matrix::ZERO;
        want_p.0[0][0] = re(1.0);
        want_p.0[1][1] = re(1.0);
        assert_eq!(pi, want_p);
        assert_eq!(pi + qi, C4Matrix::identity());
    }

    #[test]
    fn single_step_from_origin() {
        let (p, q) = split_coin(&build_coin(&CoinParams::hadamard()));
        let state = WalkState::initial(&InitialState::basis(0));
        let next = step(&state, &p, &q);
        let h = FRAC_1_SQRT_2;
        let want_left = C4Vector::new(re(0.0), re(h), re(0.0), re(0.0));
        let want_right = C4Vector::new(re(0.0), re(0.0), re(h), re(0.0));
        assert!(next.amplitude(-1).max_abs_diff(&want_left) < 1e-15);
        assert!(next.amplitude(1).max_abs_diff(&want_right) < 1e-15);
        assert_abs_diff_eq!(next.total_probability(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn step_annihilates_zero_state() {
        let (p, q) = split_coin(&build_coin(&CoinParams::hadamard()));
        let zero = WalkState {
            time: 3,
            amplitudes: vec![C4Vector::ZERO; 7],
        };
        let next = step(&zero, &p, &q);
        assert_eq!(next.total_probability(), 0.0);
    }

    #[test]
    fn two_steps_match_displayed_matrix() {
        // ψ₂(0) = (PQ + QP) ψ₀(0) with (PQ+QP) = (1/2)[[1,1,1,-1],[0..],[1,-1,1,1],[0..]]
        let (p, q) = split_coin(&build_coin(&CoinParams::hadamard()));
        let combined = p.mat_mul(&q) + q.mat_mul(&p);
        let want = C4Matrix::from_rows([
            [re(0.5), re(0.5), re(0.5), re(-0.5)],
            [re(0.0); 4],
            [re(0.5), re(-0.5), re(0.5), re(0.5)],
            [re(0.0); 4],
        ]);
        assert!(combined.max_abs_diff(&want) < 1e-15);

        let init = InitialState::symmetric();
        let state = evolve(&init, &CoinParams::hadamard(), 2).unwrap();
        let via_matrix = combined.mat_vec(&init.as_vector());
        assert!(state.amplitude(0).max_abs_diff(&via_matrix) < 1e-14);
    }

    #[test]
    fn evolve_time_zero_is_delta_at_origin() {
        let state = evolve(&InitialState::symmetric(), &CoinParams::hadamard(), 0).unwrap();
        let dist = state.distribution();
        assert_abs_diff_eq!(dist.prob(0), 1.0, epsilon = 1e-15);
        assert_eq!(dist.support().count(), 1);
    }

    #[test]
    fn return_probabilities_at_small_even_times() {
        // P(X₂=0) = 1/2 and P(X₄=0) = 5/8 for the symmetric state.
        let init = InitialState::symmetric();
        let coin = CoinParams::hadamard();
        let s2 = evolve(&init, &coin, 2).unwrap();
        assert_abs_diff_eq!(s2.return_probability(), 0.5, epsilon = 1e-14);
        let s4 = evolve(&init, &coin, 4).unwrap();
        assert_abs_diff_eq!(s4.return_probability(), 0.625, epsilon = 1e-14);
    }

    #[test]
    fn origin_amplitude_at_time_four_for_gamma_start() {
        let state = evolve(&InitialState::basis(2), &CoinParams::hadamard(), 4).unwrap();
        let want = C4Vector::new(re(0.5), re(-0.25), re(0.5), re(0.25));
        assert!(state.amplitude(0).max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn one_step_distribution_sums_to_one() {
        let state = evolve(&InitialState::basis(1), &CoinParams::hadamard(), 1).unwrap();
        let dist = state.distribution();
        assert_abs_diff_eq!(dist.prob(-1) + dist.prob(1), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn parity_sites_are_exactly_zero() {
        let state = evolve(&InitialState::symmetric(), &CoinParams::hadamard(), 11).unwrap();
        for x in state.support() {
            if (x + 11) % 2 != 0 {
                assert_eq!(state.amplitude(x).norm_sqr(), 0.0);
            }
        }
    }

    #[test]
    fn distribution_matches_oracle_at_t10() {
        let init = InitialState::symmetric();
        let coin = CoinParams::hadamard();
        let dist = evolve(&init, &coin, 10).unwrap().distribution();
        for x in -10..=10 {
            let oracle = path_sum_oracle(&init, &coin, 10, x).unwrap();
            assert_abs_diff_eq!(dist.prob(x), oracle.norm_sqr(), epsilon = 1e-12);
        }
    }

    #[test]
    fn oracle_time_zero_and_examples() {
        let init = InitialState::basis(2);
        let coin = CoinParams::hadamard();
        let at0 = path_sum_oracle(&init, &coin, 0, 0).unwrap();
        assert!(at0.max_abs_diff(&init.as_vector()) < 1e-15);

        let t4 = path_sum_oracle(&init, &coin, 4, 0).unwrap();
        let want = C4Vector::new(re(0.5), re(-0.25), re(0.5), re(0.25));
        assert!(t4.max_abs_diff(&want) < 1e-14);

        let sym = InitialState::symmetric();
        let t2 = path_sum_oracle(&sym, &coin, 2, 0).unwrap();
        let evolved = evolve(&sym, &coin, 2).unwrap();
        assert!(t2.max_abs_diff(&evolved.amplitude(0)) < 1e-14);
    }

    #[test]
    fn resource_limits_are_enforced() {
        let init = InitialState::symmetric();
        let coin = CoinParams::hadamard();
        assert!(matches!(
            evolve(&init, &coin, MAX_EVOLVE_TIME + 1),
            Err(WalkError::TimeBudget { .. })
        ));
        assert!(matches!(
            path_sum_oracle(&init, &coin, 21, 0),
            Err(WalkError::PathEnumeration { .. })
        ));
    }

    #[test]
    fn return_probability_time_zero_is_one() {
        let state = evolve(&InitialState::symmetric(), &CoinParams::hadamard(), 0).unwrap();
        assert_eq!(state.return_probability(), 1.0);
    }
}
