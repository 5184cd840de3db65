//! Seed derivation for nested deterministic runs.
//!
//! Sub-tasks (per-cluster refinements, per-alpha perturbations, replicate
//! runs) each get their own stream derived from a base seed so that results
//! do not depend on scheduling order.

use rand_chacha::ChaCha8Rng;

/// Derive an independent seed for sub-stream `stream` of `seed`.
///
/// SplitMix64 finalizer over the combined value; stable across platforms.
pub fn mix_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The deterministic RNG used throughout the crate.
pub(crate) fn rng_from(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
