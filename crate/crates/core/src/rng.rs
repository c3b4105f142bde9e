//! Seed derivation and seeded generators.
//!
//! Every random quantity in the crate is drawn from a [`ChaCha8Rng`] seeded
//! through the functions below, so runs are reproducible from one master
//! seed.
//!
//! * Trial `k` (zero-based) of an experiment uses
//!   `splitmix64(master + (k + 1) * 0x9E37_79B9_7F4A_7C15)` (wrapping).
//!   Adding trials never changes the seeds of earlier ones.
//! * Named streams (graph generation, power-iteration starts, ...) use
//!   `splitmix64(master ^ splitmix64(tag))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream tag for the base sensor graph.
pub const STREAM_GRAPH: u64 = 1;
/// Stream tag for power-iteration start vectors.
pub const STREAM_POWER: u64 = 2;
/// Stream tag for decentralized protocol randomness.
pub const STREAM_PROTOCOL: u64 = 3;

/// The SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(master: u64, trial: usize) -> u64 {
    splitmix64(master.wrapping_add((trial as u64).wrapping_add(1).wrapping_mul(GOLDEN)))
}

pub fn stream_seed(master: u64, tag: u64) -> u64 {
    splitmix64(master ^ splitmix64(tag))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic unit vector orthogonal to the all-ones vector.
///
/// For `n == 1` the orthogonal complement is empty and `[1.0]` is returned.
pub fn unit_vector_orthogonal_to_ones(n: usize, seed: u64) -> Vec<f64> {
    if n <= 1 {
        return vec![1.0; n];
    }
    let mut rng = rng_from_seed(seed);
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mean = v.iter().sum::<f64>() / n as f64;
        v.iter_mut().for_each(|x| *x -= mean);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|x| *x /= norm);
            return v;
        }
    }
}
