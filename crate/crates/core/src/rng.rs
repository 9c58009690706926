//! Sampling stream used by ancestral sampling.
//!
//! ChaCha8 keyed by `ChaCha8Rng::seed_from_u64(seed)` (the `rand_core` 0.6
//! PCG32-based seed expansion). Each uniform draw consumes one `next_u64`
//! and keeps its top 53 bits: `u = (w >> 11) * 2^-53`, so `u` lies in `[0, 1)`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub(crate) struct UniformStream(ChaCha8Rng);

impl UniformStream {
    pub(crate) fn new(seed: u64) -> Self {
        UniformStream(ChaCha8Rng::seed_from_u64(seed))
    }

    pub(crate) fn next_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
