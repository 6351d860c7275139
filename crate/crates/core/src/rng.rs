//! SplitMix64, the fixed generator behind every seeded routine in the crate.
//!
//! The exact algorithm (Steele, Lea & Flood, 2014) is part of the output
//! contract: `chaos_game` and the min-ball shuffle are bit-reproducible
//! across platforms and releases.
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15         (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9   (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB   (wrapping)
//! return z ^ (z >> 31)
//! ```
//!
//! Bounded draws use the multiply-shift reduction `(z * n) >> 64` on the
//! full 128-bit product.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform index in `0..n`. `n` must be nonzero.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Fisher-Yates shuffle driven by [`below`](Self::below).
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}
