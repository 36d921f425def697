//! The `verify` subcommand: runs every cross-module invariant with seeded
//! randomness and reports one line per check.
//!
//! A check passes when its measured value is at most its threshold, so every
//! check (including the boolean-flavored ones) reports a number that can be
//! overridden with `--tol NAME=VALUE`.

use crate::config::RunConfig;
use anyhow::{Context, Result};
use num_complex::Complex64 as Complex;
use quadwalk_core::limit::x_space_moment;
use quadwalk_core::quad::{konno_weighted_integral, DEFAULT_QUAD_PANELS};
use quadwalk_core::spectral::{hadamard_eigen, TAIL_RATIO};
use quadwalk_core::{
    delta_mass, delta_mass_quadrature, evolve, fourier_evolve, group_velocity, hat_u,
    memory_evolve, path_sum_oracle, stationary_amplitude, stationary_total, stationary_return_probability,
    stationary_probability, theoretical_moment, CoinParams, InitialState, LimitLaw, MemoryWalkState, Parity,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

pub struct CheckResult {
    pub name: &'static str,
    pub measured: f64,
    pub detail: &'static str,
}

pub fn default_thresholds() -> BTreeMap<String, f64> {
    [
        ("coin-unitarity", 1e-12),
        ("norm-conservation", 1e-10),
        ("parity-support", 0.0),
        ("oracle-equivalence", 1e-12),
        ("memory-bijection", 1e-12),
        ("eigen-residual", 1e-10),
        ("eigen-orthonormality", 1e-10),
        ("eigenvalue-determinant", 1e-10),
        ("fourier-vs-direct", 1e-10),
        ("stationary-consistency", 1e-12),
        ("stationary-decay", 1e-12),
        ("sum-limit-equals-delta", 1e-10),
        ("limit-normalization", 1e-8),
        ("delta-dual-route", 1e-8),
        ("moment-duality", 1e-6),
        ("h-finite-difference", 1e-7),
        ("density-nonnegativity", 1e-10),
        ("convergence-trend", 1.0),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

fn random_init(rng: &mut ChaCha8Rng) -> InitialState {
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

fn random_coin(rng: &mut ChaCha8Rng) -> CoinParams {
    let theta = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let phi_a = rng.gen_range(0.0..std::f64::consts::TAU);
    let phi_b = rng.gen_range(0.0..std::f64::consts::TAU);
    let chi = rng.gen_range(0.0..std::f64::consts::TAU);
    let a = Complex::from_polar(theta.cos(), phi_a);
    let b = Complex::from_polar(theta.sin(), phi_b);
    let phase = Complex::from_polar(1.0, chi);
    CoinParams::new(a, b, -phase * b.conj(), phase * a.conj()).expect("unitary block")
}

/// Runs every check; returns the report text and whether all passed.
pub fn run(cfg: &RunConfig) -> Result<(String, bool)> {
    let checks = run_checks(cfg);
    let mut report = String::new();
    writeln!(
        report,
        "invariant verification (seed {}, coin {})",
        cfg.seed,
        if cfg.perturbation.is_some() {
            "perturbed"
        } else if crate::config::is_hadamard(&cfg.coin) {
            "Hadamard"
        } else {
            "custom"
        }
    )?;
    let mut passed = 0usize;
    for check in &checks {
        let threshold = cfg.tolerances[check.name];
        let ok = check.measured <= threshold;
        passed += ok as usize;
        writeln!(
            report,
            "{}  {:<24} measured={:<12.3e} threshold={:<9.1e} {}",
            if ok { "PASS" } else { "FAIL" },
            check.name,
            check.measured,
            threshold,
            check.detail
        )?;
    }
    let all_ok = passed == checks.len();
    writeln!(
        report,
        "verification: {passed}/{} checks passed",
        checks.len()
    )?;

    match cfg.out.as_deref() {
        Some(path) => std::fs::write(path, &report)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{report}"),
    }
    Ok((report, all_ok))
}

fn run_checks(cfg: &RunConfig) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let coin = cfg.coin;
    let hadamard = CoinParams::hadamard();
    let mut checks = Vec::new();

    checks.push(CheckResult {
        name: "coin-unitarity",
        measured: coin.block_deviation(),
        detail: "max deviation of the coin block from unitarity",
    });

    // norm conservation of the configured coin over a long run
    {
        let mut worst = 0.0f64;
        for _ in 0..3 {
            let init = random_init(&mut rng);
            let state = evolve(&init, &coin, 1000).unwrap();
            worst = worst.max((state.total_probability() - 1.0).abs());
        }
        checks.push(CheckResult {
            name: "norm-conservation",
            measured: worst,
            detail: "max |total probability - 1| after 1000 steps, 3 random states",
        });
    }

    // exact zero amplitude off the parity sublattice
    {
        let mut worst = 0.0f64;
        let init = random_init(&mut rng);
        let state = evolve(&init, &coin, 51).unwrap();
        for x in state.support() {
            if (x + 51) % 2 != 0 {
                worst = worst.max(state.amplitude(x).norm_sqr());
            }
        }
        checks.push(CheckResult {
            name: "parity-support",
            measured: worst,
            detail: "max probability on wrong-parity sites at t=51",
        });
    }

    // path-sum oracle against the evolution engine
    {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let c = random_coin(&mut rng);
            let init = random_init(&mut rng);
            for t in 0..=12usize {
                let dist = evolve(&init, &c, t).unwrap().distribution();
                for x in dist.support() {
                    let oracle = path_sum_oracle(&init, &c, t, x).unwrap();
                    worst = worst.max((dist.prob(x) - oracle.norm_sqr()).abs());
                }
            }
        }
        checks.push(CheckResult {
            name: "oracle-equivalence",
            measured: worst,
            detail: "max |evolve - path sum| probability gap, t <= 12, 20 random pairs",
        });
    }

    // memory-walk bijection
    {
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let c = random_coin(&mut rng);
            let init = random_init(&mut rng);
            let mut mem = MemoryWalkState::from_initial_state(&init);
            for t in 1..=12usize {
                mem = memory_evolve(&mem, &c, 1);
                let dist = evolve(&init, &c, t).unwrap().distribution();
                let marginal = mem.position_marginal();
                for x in dist.support() {
                    let pm = marginal.get(&x).copied().unwrap_or(0.0);
                    worst = worst.max((pm - dist.prob(x)).abs());
                }
            }
        }
        checks.push(CheckResult {
            name: "memory-bijection",
            measured: worst,
            detail: "max position-marginal gap against the memory walk, t <= 12",
        });
    }

    // spectral checks are statements about the Hadamard walk
    {
        let mut worst_res = 0.0f64;
        let mut worst_gram = 0.0f64;
        let mut worst_det = 0.0f64;
        for _ in 0..1000 {
            let k = rng.gen_range(-PI..PI);
            let sys = hadamard_eigen(k);
            let u = hat_u(&hadamard, k);
            let mut det_product = Complex::new(1.0, 0.0);
            for j in 0..4 {
                det_product *= sys.eigenvalues[j];
                let res = (u.mat_vec(&sys.eigenvectors[j])
                    - sys.eigenvectors[j].scale(sys.eigenvalues[j]))
                .norm();
                worst_res = worst_res.max(res);
                for i in 0..4 {
                    let target = if i == j { 1.0 } else { 0.0 };
                    worst_gram = worst_gram.max(
                        (sys.eigenvectors[i].inner(&sys.eigenvectors[j])
                            - Complex::new(target, 0.0))
                        .norm(),
                    );
                }
            }
            worst_det = worst_det.max((det_product - u.determinant()).norm());
        }
        checks.push(CheckResult {
            name: "eigen-residual",
            measured: worst_res,
            detail: "max ‖U(k)v - λv‖ over 1000 random momenta",
        });
        checks.push(CheckResult {
            name: "eigen-orthonormality",
            measured: worst_gram,
            detail: "max Gram-matrix deviation from identity",
        });
        checks.push(CheckResult {
            name: "eigenvalue-determinant",
            measured: worst_det,
            detail: "max |Πλ_j - det U(k)|",
        });
    }

    // momentum-space propagation against the direct engine
    {
        let mut worst = 0.0f64;
        for &t in &[1usize, 7, 60, 200] {
            let init = random_init(&mut rng);
            let direct = evolve(&init, &hadamard, t).unwrap();
            let spectral = fourier_evolve(&init, &hadamard, t, 2 * t + 2).unwrap();
            for x in direct.support() {
                worst = worst.max(direct.amplitude(x).max_abs_diff(&spectral.amplitude(x)));
            }
        }
        checks.push(CheckResult {
            name: "fourier-vs-direct",
            measured: worst,
            detail: "max amplitude gap between spectral and direct evolution, t <= 200",
        });
    }

    // closed-form stationary values vs. the asymptotic amplitude displays
    {
        let mut worst = 0.0f64;
        let mut worst_decay = 0.0f64;
        for _ in 0..100 {
            let init = random_init(&mut rng);
            for x in [-5i64, -2, -1, 0, 1, 2, 4] {
                let (even, odd) = stationary_amplitude(x, &init);
                worst = worst
                    .max((even.norm_sqr() - stationary_probability(x, Parity::Even, &init)).abs())
                    .max((odd.norm_sqr() - stationary_probability(x, Parity::Odd, &init)).abs());
            }
            for x in [2i64, 3, -2, -3] {
                let parity = if x % 2 == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                let here = stationary_probability(x, parity, &init);
                let farther = stationary_probability(x + 2 * x.signum(), parity, &init);
                worst_decay = worst_decay.max((farther - TAIL_RATIO * TAIL_RATIO * here).abs());
            }
        }
        checks.push(CheckResult {
            name: "stationary-consistency",
            measured: worst,
            detail: "max |closed form - ‖amplitude limit‖²| over 100 random states",
        });
        checks.push(CheckResult {
            name: "stationary-decay",
            measured: worst_decay,
            detail: "max deviation from the (3-2√2)² geometric tail ratio",
        });
    }

    // Σ_x stationary = Δ, over 100 random states
    {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let init = random_init(&mut rng);
            worst = worst.max((stationary_total(&init) - delta_mass(&init)).abs());
        }
        checks.push(CheckResult {
            name: "sum-limit-equals-delta",
            measured: worst,
            detail: "max |Σ_x stationary mass - Δ| over 100 random states",
        });
    }

    // Δ + continuous mass = 1, over 100 random states
    {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let init = random_init(&mut rng);
            let law = LimitLaw::for_initial_state(&init);
            let mass = konno_weighted_integral(
                |x| law.c0 + law.c1 * x + law.c2 * x * x,
                -1.0,
                1.0,
                DEFAULT_QUAD_PANELS / 4,
            );
            worst = worst.max((law.delta + mass - 1.0).abs());
        }
        checks.push(CheckResult {
            name: "limit-normalization",
            measured: worst,
            detail: "max |Δ + density mass - 1| over 100 random states",
        });
    }

    // closed-form Δ vs. the momentum-space integral
    {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let init = random_init(&mut rng);
            worst = worst.max((delta_mass(&init) - delta_mass_quadrature(&init, 512)).abs());
        }
        checks.push(CheckResult {
            name: "delta-dual-route",
            measured: worst,
            detail: "max |closed form - k-integral| of Δ over 100 random states",
        });
    }

    // moments by momentum-space and real-space quadrature
    {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let init = random_init(&mut rng);
            let law = LimitLaw::for_initial_state(&init);
            for r in 0..=4u32 {
                worst =
                    worst.max((theoretical_moment(&init, r, 512) - x_space_moment(&law, r)).abs());
            }
        }
        checks.push(CheckResult {
            name: "moment-duality",
            measured: worst,
            detail: "max gap between the two moment routes, r <= 4, 20 random states",
        });
    }

    // hard-coded group velocity vs. central finite differences
    {
        let step = 1e-5;
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let k = rng.gen_range(-3.0..3.0);
            let lam = |k: f64| hadamard_eigen(k).eigenvalues[2];
            let derivative = (lam(k + step) - lam(k - step)) / (2.0 * step);
            let fd = (Complex::new(0.0, 1.0) * derivative / lam(k)).re;
            worst = worst.max((group_velocity(3, k) - fd).abs());
        }
        checks.push(CheckResult {
            name: "h-finite-difference",
            measured: worst,
            detail: "max |analytic - finite-difference| group velocity, 1000 momenta",
        });
    }

    // limit density stays non-negative
    {
        let mut most_negative = 0.0f64;
        for _ in 0..100 {
            let init = random_init(&mut rng);
            let law = LimitLaw::for_initial_state(&init);
            for n in 0..400 {
                let x = -0.707 + n as f64 * (1.414 / 399.0);
                most_negative = most_negative.max(-law.density(x));
            }
        }
        checks.push(CheckResult {
            name: "density-nonnegativity",
            measured: most_negative,
            detail: "most negative density value over 100 random states (0 if none)",
        });
    }

    // simulated return probability drifts toward the closed form
    {
        let mut worst_ratio = 0.0f64;
        for _ in 0..10 {
            let init = random_init(&mut rng);
            let target = stationary_return_probability(&init);
            let errs: Vec<f64> = [50usize, 100, 200, 400, 800]
                .iter()
                .map(|&t| {
                    let p = evolve(&init, &hadamard, 2 * t)
                        .unwrap()
                        .return_probability();
                    (p - target).abs()
                })
                .collect();
            let early = errs[0].max(errs[1]).max(1e-300);
            let late = errs[3].max(errs[4]);
            worst_ratio = worst_ratio.max(late / early);
        }
        checks.push(CheckResult {
            name: "convergence-trend",
            measured: worst_ratio,
            detail: "worst late/early error-envelope ratio (must not exceed 1)",
        });
    }

    checks
}
