//! Seed derivation for independent, reproducible RNG streams.
//!
//! Parameter sweeps need one independent stream per (cell, replica) pair that
//! depends only on the base seed and the pair's indices, never on execution
//! order. Streams are derived with the splitmix64 finalizer; the constants
//! below are the ones from Steele, Lea & Flood's original generator.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_A: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_B: u64 = 0x94D0_49BB_1331_11EB;

/// splitmix64 output function: a bijective avalanche mix of one 64-bit word.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(MIX_A);
    z = (z ^ (z >> 27)).wrapping_mul(MIX_B);
    z ^ (z >> 31)
}

/// Derives the seed for one sweep cell/replica from the base seed.
///
/// `cell_seed(base, c, r) = splitmix64(splitmix64(base ^ c * GOLDEN) ^ r * MIX_A)`
pub fn cell_seed(base: u64, cell_index: u64, replica: u64) -> u64 {
    let s = splitmix64(base ^ cell_index.wrapping_mul(GOLDEN_GAMMA));
    splitmix64(s ^ replica.wrapping_mul(MIX_A))
}

/// Derives a labelled sub-stream from a seed (e.g. one stream for drawing the
/// initial state and a distinct one for the scheduler of the same run).
pub fn substream(seed: u64, label: u64) -> u64 {
    splitmix64(seed ^ label.wrapping_mul(MIX_B))
}
