//! Pinned 64-bit mixing used for every pseudo-random decision in the crate.
//!
//! All randomness — per-round activation keys, generator streams, estimator
//! sampling — is derived from one fixed function so that results are
//! bit-identical across runs, platforms, and implementations. The function is
//! specified exactly:
//!
//! ```text
//! mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//!           z ^= z >> 27; z *= 0x94D049BB133111EB;
//!           z ^= z >> 31; return z                      (wrapping arithmetic)
//!
//! hash3(seed, a, b) = mix64(mix64(mix64(seed ^ 0x243F6A8885A308D3) ^ a) ^ b)
//! ```
//!
//! `mix64` is the SplitMix64 finalizer; the salt is the first 64 bits of the
//! fractional part of pi.

const SALT: u64 = 0x243F_6A88_85A3_08D3;

/// SplitMix64 finalizer. Bijective on `u64`.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The crate's named key function: absorbs `a` then `b` into a seeded state.
///
/// For fixed `seed`, distinct `(a, b)` pairs with equal `a` always produce
/// distinct outputs; collisions otherwise occur with probability ~2^-64.
#[inline]
pub fn hash3(seed: u64, a: u64, b: u64) -> u64 {
    mix64(mix64(mix64(seed ^ SALT) ^ a) ^ b)
}

/// Maps a 64-bit word to `0..n` with at most 2^-64 relative bias
/// (fixed-point multiply, no rejection loop, no platform dependence).
#[inline]
pub fn uniform_below(word: u64, n: u64) -> u64 {
    debug_assert!(n > 0);
    ((word as u128 * n as u128) >> 64) as u64
}

/// Deterministic word stream: the i-th word of stream `(seed, nonce)` is
/// `hash3(seed, nonce, i)`.
#[derive(Debug, Clone)]
pub struct HashStream {
    seed: u64,
    nonce: u64,
    counter: u64,
}

impl HashStream {
    pub fn new(seed: u64, nonce: u64) -> Self {
        HashStream {
            seed,
            nonce,
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let word = hash3(self.seed, self.nonce, self.counter);
        self.counter += 1;
        word
    }

    /// Next value in `0..n`.
    pub fn next_below(&mut self, n: u64) -> u64 {
        uniform_below(self.next_u64(), n)
    }

    /// In-place Fisher-Yates shuffle driven by this stream.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
