//! The deterministic PRNG behind every seeded operation.
//!
//! Split reproducibility is a compatibility contract: a (corpus, seed) pair
//! must select the same validation and test segments in every release, on
//! every platform. The generator is therefore pinned to a named algorithm,
//! SplitMix64 (Steele, Lea, Flood 2014), and the shuffle to Fisher–Yates with
//! `next_u64() % (i + 1)` index selection. Changing either is a breaking
//! change.

/// SplitMix64: passes BigCrush, one u64 of state, trivially portable.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough index in `0..n` for shuffling (modulo bias is below
    /// 2^-40 for any corpus that fits in memory). Panics when `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        (self.next_u64() % n as u64) as usize
    }
}

/// In-place Fisher–Yates shuffle driven by [`SplitMix64`].
pub fn shuffle<T>(items: &mut [T], rng: &mut SplitMix64) {
    for i in (1..items.len()).rev() {
        let j = rng.below(i + 1);
        items.swap(i, j);
    }
}
