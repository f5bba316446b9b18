//! Deterministic pseudo-randomness for the whole crate.
//!
//! Every random draw (trace generation, simulated predictions, filter
//! hashing, the sampling gate) goes through the splitmix64 generator below.
//! Keeping the generator in-tree pins the exact bit stream to the seed, so
//! experiments replay byte-for-byte on any platform and any toolchain.

/// splitmix64 state mixer. Public domain construction by Sebastiano Vigna.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent seed for a named purpose from a master seed.
///
/// A single user-facing `--seed` fans out to the trace generator, the
/// predictor, the filter hashes, and the sampling gate without the streams
/// overlapping. The tag is folded in bytewise so distinct tags with a shared
/// prefix still diverge.
pub fn derive_seed(master: u64, tag: &str) -> u64 {
    let mut h = mix64(master ^ 0xa076_1d64_78bd_642f);
    for &b in tag.as_bytes() {
        h = mix64(h ^ u64::from(b));
    }
    h
}

/// Sequential splitmix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index into `0..len`. `len` must be nonzero.
    #[inline]
    pub fn next_index(&mut self, len: usize) -> usize {
        debug_assert!(len > 0);
        // Multiply-shift range reduction; bias is negligible for the table
        // sizes used here (well below 2^32).
        ((u128::from(self.next_u64()) * len as u128) >> 64) as usize
    }
}
