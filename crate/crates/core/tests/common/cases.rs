//! Seeded random instances shared by the property suites.

use lotflow_core::gen::{gen_table2, sampled_table2, CostMode};
use lotflow_core::Instance;

/// `T ∈ 3..=6`, categorical factors drawn from the seed.
pub fn small(seed: u64, beta: f64) -> Instance {
    gen_table2(&sampled_table2(seed, 3 + (seed % 4) as usize, beta)).unwrap()
}

/// Constant unit cost, no goodwill loss.
pub fn constant_cost(seed: u64) -> Instance {
    let mut cfg = sampled_table2(seed, 3 + (seed % 4) as usize, 0.0);
    cfg.cost = CostMode::Constant;
    gen_table2(&cfg).unwrap()
}

pub const BETAS: [f64; 3] = [0.0, 0.1, 0.5];

pub fn relative_gap(oracle: f64, heuristic: f64) -> f64 {
    (oracle - heuristic) / oracle.abs().max(1.0)
}
