#![allow(dead_code)]

use hsbb_core::generate::generate_random;
use hsbb_core::oracle::{brute_force, DEFAULT_CAP};
use hsbb_core::Hypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random instance with n <= 12, m <= 20 and edge sizes 2..=5.
pub fn small_instance(seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000);
    let n = rng.gen_range(3..=12);
    let m = rng.gen_range(1..=20);
    let max = rng.gen_range(2..=5usize).min(n);
    generate_random(n, m, 2, max, seed)
        .unwrap()
        .to_hypergraph()
        .unwrap()
}

pub fn corpus(count: u64) -> Vec<Hypergraph> {
    (0..count).map(small_instance).collect()
}

pub fn oracle(inst: &Hypergraph) -> usize {
    brute_force(inst, DEFAULT_CAP)
        .expect("corpus instances are small")
        .0
}

/// Optimum of the active part of `inst`, or `None` if some edge is empty.
pub fn oracle_opt(inst: &Hypergraph) -> Option<usize> {
    brute_force(inst, DEFAULT_CAP).ok().map(|(k, _)| k)
}
