//! The 64-bit mixing function behind every pseudorandom choice in the crate.
//!
//! This is the SplitMix64 output function. Everything derived from it
//! (pseudorandom strategies, pseudorandom schedules, sampled feedback words)
//! is a pure function of the seed and therefore identical across platforms.

/// SplitMix64 finalizer applied to `z + 0x9E3779B97F4A7C15`.
pub fn mix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Absorbs one word into a running hash state.
pub fn absorb(state: u64, word: u64) -> u64 {
    mix64(state ^ word)
}

/// Absorbs a bit sequence; bits are encoded as 2/3 so they never collide
/// with the small separator words used between fields.
pub fn absorb_bits(mut state: u64, bits: impl IntoIterator<Item = bool>) -> u64 {
    for b in bits {
        state = absorb(state, 2 + u64::from(b));
    }
    state
}
