//! Optimisation over finite ontological models, with brute-force oracles
//! for small instances and a seeded CHSH sampler.

mod budget;
mod montecarlo;
mod overlap;
pub mod simplex;

pub use self::budget::{brute_force_budget, max_overlap_with_chsh};
pub use self::montecarlo::{chsh_monte_carlo, ChshEstimate, MIN_SAMPLES};
pub use self::overlap::{
    brute_force_overlap, max_overlap_lp, response_patterns, OverlapOptimum, MAX_PATTERNS,
};
