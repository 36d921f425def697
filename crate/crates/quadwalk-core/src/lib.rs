//! Simulation and limit-law analysis of the 4-state discrete-time quantum
//! walk on the integer line that is equivalent to a 2-state walk with
//! one-step memory.
//!
//! The crate is organized around four layers:
//!
//! * [`linalg`] — fixed-size complex vectors and matrices (dimension 4).
//! * [`walk`] — direct-space time evolution, the memory-walk bijection and a
//!   brute-force path-product oracle ([`memory`] holds the memory picture).
//! * [`spectral`] — the momentum-space operator, its analytic
//!   eigendecomposition for the Hadamard coin and the stationary
//!   (localization) distribution.
//! * [`limit`] — the rescaled weak limit: atom mass, polynomial-weighted
//!   arcsine-type density, moments by two independent quadrature routes and
//!   empirical comparison statistics.
//!
//! All state is immutable after construction and every function is pure, so
//! values can be shared freely across threads.

pub mod limit;
pub mod linalg;
pub mod memory;
pub mod quad;
pub mod spectral;
pub mod walk;

pub use limit::{
    delta_mass, delta_mass_quadrature, empirical_rescaled_moment, group_velocity, konno_density,
    ks_distance, poly_coeffs, theoretical_moment, two_state_density, two_state_limit_cdf,
    x_space_moment, LimitLaw,
};
pub use linalg::{C4Matrix, C4Vector, Complex};
pub use memory::{map_memory_state, memory_evolve, unmap_chirality, MemoryWalkState};
pub use spectral::{
    fourier_evolve, hadamard_eigen, hat_u, k_func, m_func, rotation, stationary_amplitude,
    stationary_total, stationary_return_probability, stationary_probability, EigenSystem, Parity, SpectralError,
};
pub use walk::{
    build_coin, distribution, evolve, path_sum_oracle, return_probability, split_coin, step,
    CoinParams, InitialState, ProbabilityDistribution, WalkError, WalkState,
};
