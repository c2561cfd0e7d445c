//! Seeded, platform-independent random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type PuzzleRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> PuzzleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mix a base seed with a stream index (SplitMix64 finalizer) so that
/// per-record seeds are independent of how many draws earlier records used.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
