//! Seeded randomness. Every random choice in the crate goes through an
//! xorshift generator seeded from a `u64`, so results are reproducible
//! bit for bit across platforms and execution modes.

use rand::{Rng, SeedableRng};
use rand_xorshift::XorShiftRng;

/// "General" coefficients are uniform integers in `[-COEFF_BOUND, COEFF_BOUND]`.
pub const COEFF_BOUND: i64 = 1_000_000;

pub fn rng(seed: u64) -> XorShiftRng {
    XorShiftRng::seed_from_u64(seed)
}

pub fn general_coefficient<R: Rng>(rng: &mut R) -> i64 {
    rng.random_range(-COEFF_BOUND..=COEFF_BOUND)
}

pub fn general_coefficients<R: Rng>(rng: &mut R, count: usize) -> Vec<i64> {
    (0..count).map(|_| general_coefficient(rng)).collect()
}
