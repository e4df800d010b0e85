//! Shared inputs for the benchmarks.

use plext_core::extension::{extend_all, Instance};
use plext_core::random::random_instance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The first `count` random instances of size `n` that have a
/// two-dimensional hull.
pub fn instances(n: usize, count: usize) -> Vec<Instance> {
    (0u64..)
        .map(|seed| random_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, 64))
        .filter(|inst| extend_all(inst).is_ok())
        .take(count)
        .collect()
}
