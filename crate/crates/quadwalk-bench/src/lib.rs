//! Deterministic input fixtures for the benchmark suite.

use num_complex::Complex64 as Complex;
use quadwalk_core::{CoinParams, InitialState};

/// A fixed spread of unit initial states (no RNG, so runs are comparable).
pub fn fixture_inits() -> Vec<InitialState> {
    let mut out = vec![InitialState::symmetric(), InitialState::antisymmetric()];
    for i in 0..4 {
        out.push(InitialState::basis(i));
    }
    out.push(
        InitialState::new(
            Complex::new(0.5, -0.1),
            Complex::new(-0.3, 0.2),
            Complex::new(0.1, 0.6),
            Complex::new(0.24f64.sqrt(), 0.0),
        )
        .expect("unit norm"),
    );
    out
}

/// A non-Hadamard coin exercising the general-coin code paths.
pub fn skew_coin() -> CoinParams {
    let (c, s) = (0.8f64, 0.6f64);
    CoinParams::new(
        Complex::new(c, 0.0),
        Complex::new(0.0, s),
        Complex::new(0.0, s),
        Complex::new(c, 0.0),
    )
    .expect("rotation block is unitary")
}
