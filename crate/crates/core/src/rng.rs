//! Seeded randomness.
//!
//! Every random choice goes through [`ChaCha8Rng`]. Independent sub-streams
//! are derived from a parent seed and a list of tags by SplitMix64 mixing,
//! so a stream depends only on `(seed, tags)` and never on the order in
//! which streams are created.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream tags used by the pipeline.
pub mod tag {
    pub const SPLIT_H: u64 = 0x4831;
    pub const SPLIT_ROUNDS: u64 = 0x5244;
    pub const PARTITIONS: u64 = 0x5052;
    pub const STAGE2: u64 = 0x5332;
    pub const GRAPH: u64 = 0x4752;
    pub const PIPELINE: u64 = 0x5049;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for `(seed, tags)`.
pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(splitmix64(seed), |acc, &t| splitmix64(acc ^ splitmix64(t)))
}

pub fn rng_from(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn child_rng(seed: u64, tags: &[u64]) -> Rng {
    rng_from(derive_seed(seed, tags))
}
