//! Seeded random generators shared by the integration suites.

use num_complex::Complex64 as Complex;
use quadwalk_core::{CoinParams, InitialState};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random unit 4-vector of complex amplitudes.
pub fn random_init(rng: &mut ChaCha8Rng) -> InitialState {
    loop {
        let parts: [f64; 8] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let v: [Complex; 4] = std::array::from_fn(|i| Complex::new(parts[2 * i], parts[2 * i + 1]));
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 0.1 {
            continue;
        }
        let n = Complex::new(1.0 / norm, 0.0);
        return InitialState::new(v[0] * n, v[1] * n, v[2] * n, v[3] * n)
            .expect("normalized vector");
    }
}

/// Random unitary coin block from the standard U(2) parametrization.
pub fn random_coin(rng: &mut ChaCha8Rng) -> CoinParams {
    let theta = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let phi_a = rng.gen_range(0.0..std::f64::consts::TAU);
    let phi_b = rng.gen_range(0.0..std::f64::consts::TAU);
    let chi = rng.gen_range(0.0..std::f64::consts::TAU);
    let a = Complex::from_polar(theta.cos(), phi_a);
    let b = Complex::from_polar(theta.sin(), phi_b);
    let phase = Complex::from_polar(1.0, chi);
    let c = -phase * b.conj();
    let d = phase * a.conj();
    CoinParams::new(a, b, c, d).expect("parametrized unitary block")
}
