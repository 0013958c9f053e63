//! Counter-based splittable random streams.
//!
//! A [`CounterRng`] is a pair `(key, counter)`. Draw number `i` of a stream is
//! a pure function of the key:
//!
//! ```text
//! draw(key, i) = mix64(key + (i + 1) * GOLDEN)      (wrapping u64 arithmetic)
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer (Stafford's variant 13) and
//! `GOLDEN = 0x9E3779B97F4A7C15`. A stream keyed by the raw seed is therefore
//! bit-identical to SplitMix64 seeded with that value.
//!
//! Child streams are derived from a parent key and a 64-bit tag:
//!
//! ```text
//! child_key(key, tag) = mix64(key ^ mix64(tag + SPLIT))
//! ```
//!
//! with `SPLIT = 0xD1B54A32D192ED03`. Derivation paths compose left to right,
//! so `derive_key(seed, &[a, b])` is `child_key(child_key(seed, a), b)`.
//! Uniform doubles take the top 53 bits of a draw: `(draw >> 11) * 2^-53`,
//! which lies in `[0, 1)`.

use rand_core::{impls, RngCore};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const SPLIT: u64 = 0xD1B5_4A32_D192_ED03;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Key of the child stream labelled `tag`.
#[inline]
pub fn child_key(key: u64, tag: u64) -> u64 {
    mix64(key ^ mix64(tag.wrapping_add(SPLIT)))
}

/// Folds a derivation path into a key.
pub fn derive_key(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(seed, |k, &tag| child_key(k, tag))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(key: u64) -> Self {
        Self { key, counter: 0 }
    }

    /// Stream keyed by `derive_key(seed, path)`.
    pub fn from_path(seed: u64, path: &[u64]) -> Self {
        Self::new(derive_key(seed, path))
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    /// Number of draws consumed so far.
    pub fn position(&self) -> u64 {
        self.counter
    }

    /// Independent child stream; does not advance `self`.
    pub fn split(&self, tag: u64) -> Self {
        Self::new(child_key(self.key, tag))
    }

    /// Random access to draw `index` without touching the counter.
    #[inline]
    pub fn at(&self, index: u64) -> u64 {
        mix64(self.key.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

impl RngCore for CounterRng {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        let out = self.at(self.counter);
        self.counter = self.counter.wrapping_add(1);
        out
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        impls::fill_bytes_via_next(self, dst)
    }
}
