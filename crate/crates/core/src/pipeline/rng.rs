use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic random stream for one (seed, stage position, image index).
///
/// Every combination gets an independent ChaCha stream keyed directly by the
/// triple, so draws never depend on which other images or stages were run.
#[derive(Debug, Clone)]
pub struct SeededRng(ChaCha8Rng);

const DOMAIN: [u8; 8] = *b"geomaug1";

impl SeededRng {
    pub fn for_stage(seed: u64, stage: usize, index: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&index.to_le_bytes());
        key[16..24].copy_from_slice(&(stage as u64).to_le_bytes());
        key[24..].copy_from_slice(&DOMAIN);
        SeededRng(ChaCha8Rng::from_seed(key))
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    /// Uniform in `[lo, hi]`; returns `lo` when the range is empty.
    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        if hi > lo {
            lo + (hi - lo) * self.uniform()
        } else {
            lo
        }
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int_inclusive(&mut self, lo: i64, hi: i64) -> i64 {
        if hi > lo {
            self.0.random_range(lo..=hi)
        } else {
            lo
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.0);
    }
}
