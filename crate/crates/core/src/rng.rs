//! Deterministic RNG streams.
//!
//! Every randomized component draws from a ChaCha8 stream derived from a
//! domain tag, a user seed and a stream index. Attempt `t` of a search and
//! restart `r` of a probe therefore see the same bytes no matter how the
//! work is scheduled, which is what makes the determinism contract of the
//! search operations hold under parallel execution.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// RNG for stream `index` within the domain identified by `tag`.
///
/// The tag keeps unrelated consumers of the same user seed (coloring search,
/// blue probes, ground sampling) on disjoint streams.
pub fn stream_rng(tag: &[u8], seed: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    for (i, &b) in tag.iter().take(16).enumerate() {
        key[i] = b;
    }
    key[16..24].copy_from_slice(&seed.to_le_bytes());
    key[24..32].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
