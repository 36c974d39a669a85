//! Reproducible per-trial random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream for trial `trial` at sweep point `point`.
///
/// The key mixes `(seed, point)`; the trial index selects the ChaCha stream,
/// so trials can run in any order or thread and still draw the same bits.
pub fn trial_rng(seed: u64, point: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    let a = splitmix64(seed);
    let b = splitmix64(a ^ splitmix64(point.wrapping_add(0x5851_f42d_4c95_7f2d)));
    for (chunk, word) in key
        .chunks_exact_mut(8)
        .zip([a, b, splitmix64(b), splitmix64(a ^ b)])
    {
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}

/// Single stream for one-off tools (sampling commands, examples).
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    trial_rng(seed, 0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = trial_rng(7, 1, 3).random();
        let b: u64 = trial_rng(7, 1, 3).random();
        assert_eq!(a, b);
        let c: u64 = trial_rng(7, 1, 4).random();
        let d: u64 = trial_rng(7, 2, 3).random();
        let e: u64 = trial_rng(8, 1, 3).random();
        assert!(a != c && a != d && a != e);
    }
}
