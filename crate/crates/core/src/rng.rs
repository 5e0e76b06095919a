//! Deterministic random stream derivation.
//!
//! Every stochastic draw in the pipeline comes from a `ChaCha8Rng` derived
//! from the master seed plus a purpose tag and position indices. Streams
//! are pure functions of `(seed, tags)` — no shared mutable RNG state —
//! so runs replay bit-identically across thread counts, and a resumed
//! training run re-derives exactly the draws an uninterrupted run would
//! have made.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Purpose tags keeping unrelated streams statistically independent.
pub mod tag {
    pub const SYNTH: u64 = 0x01;
    pub const AUGMENT: u64 = 0x02;
    pub const SHUFFLE: u64 = 0x03;
    pub const NOISE: u64 = 0x04;
    pub const INIT_GEN: u64 = 0x05;
    pub const INIT_CRITIC: u64 = 0x06;
    pub const INIT_RECOGNIZER: u64 = 0x07;
    pub const GEOMETRY: u64 = 0x08;
    pub const EVAL: u64 = 0x09;
    pub const GRID: u64 = 0x0a;
    pub const FEATURES: u64 = 0x0b;
}

/// Derive an independent RNG stream from the master seed and a tag path.
pub fn stream(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    for t in tags {
        hasher.update(t.to_le_bytes());
    }
    let digest: [u8; 32] = hasher.finalize().into();
    ChaCha8Rng::from_seed(digest)
}
