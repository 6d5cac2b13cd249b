//! Deterministic, splittable random streams.
//!
//! Every stochastic step in the crate (splits, bootstrap resamples, feature
//! subsampling, parameter init, epoch shuffles) draws from a ChaCha stream
//! whose seed is derived from the experiment seed plus a domain tag, so
//! results depend only on integer seeds and never on global or time-based
//! state.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags keeping independent consumers off each other's streams.
pub mod tag {
    pub const SPLIT: u64 = 0x01;
    pub const TREE: u64 = 0x02;
    pub const FEATURE_SUBSET: u64 = 0x03;
    pub const INIT: u64 = 0x04;
    pub const SHUFFLE: u64 = 0x05;
    pub const VALIDATION: u64 = 0x06;
    pub const SYNTH: u64 = 0x07;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a sub-seed from a base seed and a tag path.
pub fn sub_seed(seed: u64, tags: &[u64]) -> u64 {
    let mut state = splitmix64(seed);
    for &t in tags {
        state = splitmix64(state ^ splitmix64(t));
    }
    state
}

/// A deterministic stream keyed on (seed, tags).
pub fn sub_rng(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sub_seed(seed, tags))
}
