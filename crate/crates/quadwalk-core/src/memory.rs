//! The 2-state walk with one-step memory and its chirality relabeling.
//!
//! A memory-walk basis state `|n₂, n₁, p⟩` records the previous position
//! `n₂ = n₁ ± 1`, the current position `n₁` and a coin bit `p`. Relabeling
//! `|n₂, n₁, p⟩ ↦ |n₁, n₁ - n₂ + 1 + p⟩` turns it into the 4-state walk:
//! the two models evolve identically, which [`memory_evolve`] lets tests
//! confirm step by step.

use crate::linalg::Complex;
use crate::walk::{CoinParams, InitialState, WalkError};
use std::collections::BTreeMap;

/// Relabels a memory-walk basis state as `(position, chirality)` with
/// `chirality = n1 - n2 + 1 + p ∈ {0,1,2,3}`.
pub fn map_memory_state(n2: i64, n1: i64, p: u8) -> Result<(i64, usize), WalkError> {
    if (n1 - n2).abs() != 1 {
        return Err(WalkError::InvalidMemoryKey { n2, n1 });
    }
    if p > 1 {
        return Err(WalkError::InvalidCoinBit { p });
    }
    let chirality = (n1 - n2 + 1 + p as i64) as usize;
    Ok((n1, chirality))
}

/// Inverse of [`map_memory_state`]: recovers `(n2, n1, p)` from a position
/// and chirality.
pub fn unmap_chirality(position: i64, chirality: usize) -> (i64, i64, u8) {
    assert!(chirality < 4, "chirality must be in 0..4");
    if chirality < 2 {
        (position + 1, position, chirality as u8)
    } else {
        (position - 1, position, (chirality - 2) as u8)
    }
}

/// Memory-walk amplitudes keyed by `(n2, n1, p)`.
#[derive(Clone, Debug, Default)]
pub struct MemoryWalkState {
    time: usize,
    amplitudes: BTreeMap<(i64, i64, u8), Complex>,
}

impl MemoryWalkState {
    /// Places the four origin amplitudes of a 4-state initial state on the
    /// matching memory keys (inverse relabeling at `n1 = 0`).
    pub fn from_initial_state(init: &InitialState) -> Self {
        let v = init.as_vector();
        let mut amplitudes = BTreeMap::new();
        for (chirality, amp) in v.0.into_iter().enumerate() {
            if amp != Complex::new(0.0, 0.0) {
                amplitudes.insert(unmap_chirality(0, chirality), amp);
            }
        }
        Self {
            time: 0,
            amplitudes,
        }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn amplitude(&self, n2: i64, n1: i64, p: u8) -> Complex {
        self.amplitudes
            .get(&(n2, n1, p))
            .copied()
            .unwrap_or(Complex::new(0.0, 0.0))
    }

    pub fn total_probability(&self) -> f64 {
        self.amplitudes.values().map(|z| z.norm_sqr()).sum()
    }

    /// Probability of each current position, summed over memory and coin bit.
    pub fn position_marginal(&self) -> BTreeMap<i64, f64> {
        let mut out = BTreeMap::new();
        for (&(_, n1, _), amp) in &self.amplitudes {
            *out.entry(n1).or_insert(0.0) += amp.norm_sqr();
        }
        out
    }
}

/// Applies `t` memory-walk steps. Each step applies, in order: the coin
/// `C₁` (mixes the coin bit), the conditional memory exchange `C₂` (mirrors
/// `n₂` across `n₁` when `p = 0`) and the shift `S`
/// (`|n₂, n₁, p⟩ → |n₁, 2n₁ - n₂, p⟩`).
pub fn memory_evolve(state: &MemoryWalkState, coin: &CoinParams, t: usize) -> MemoryWalkState {
    let mut amps = state.amplitudes.clone();
    for _ in 0..t {
        // C₁
        let mut after_coin: BTreeMap<(i64, i64, u8), Complex> = BTreeMap::new();
        for (&(n2, n1, p), &v) in &amps {
            let (to0, to1) = if p == 0 {
                (coin.a * v, coin.b * v)
            } else {
                (coin.c * v, coin.d * v)
            };
            *after_coin
                .entry((n2, n1, 0))
                .or_insert(Complex::new(0.0, 0.0)) += to0;
            *after_coin
                .entry((n2, n1, 1))
                .or_insert(Complex::new(0.0, 0.0)) += to1;
        }
        // C₂ then S
        let mut next: BTreeMap<(i64, i64, u8), Complex> = BTreeMap::new();
        for (&(n2, n1, p), &v) in &after_coin {
            let n2_swapped = if p == 0 { 2 * n1 - n2 } else { n2 };
            let key = (n1, 2 * n1 - n2_swapped, p);
            *next.entry(key).or_insert(Complex::new(0.0, 0.0)) += v;
        }
        amps = next;
    }
    MemoryWalkState {
        time: state.time + t,
        amplitudes: amps,
    }
}
