//! Seeded randomness.
//!
//! All sampling uses ChaCha8 (`rand_chacha`). A 64-bit seed is expanded with
//! `SeedableRng::seed_from_u64`, and independent sub-streams are selected with
//! ChaCha's 64-bit stream id, so work can be split into fixed-size blocks that
//! are generated on any thread and still reproduce bit-for-bit.
//!
//! Bounded integers are drawn by rejection from `next_u64`: values above the
//! largest multiple of the bound are discarded, which removes modulo bias.
//!
//! Seeds for derived runs (doubling probes, repetitions, trials) come from
//! [`derive_seed`], a SplitMix64 finalizer over `master + (index+1)·φ64`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Vertices (or edges, or vertex pairs) covered by one ChaCha stream.
pub const BLOCK: usize = 4096;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Generator for sub-stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform integer in `0..bound`. `bound` must be non-zero.
pub fn uniform_below<R: RngCore>(rng: &mut R, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    if bound.is_power_of_two() {
        return rng.next_u64() & (bound - 1);
    }
    // Largest value v such that 0..=v holds an exact multiple of `bound`.
    let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return x % bound;
        }
    }
}

/// True with probability exactly `num/den`.
pub fn bernoulli<R: RngCore>(rng: &mut R, num: u64, den: u64) -> bool {
    num >= den || uniform_below(rng, den) < num
}

/// Child seed number `index` of `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
