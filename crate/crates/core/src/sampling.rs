//! Seeded randomness. Every random draw in the crate goes through [`seeded_rng`].

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::quantum::QuantumState;

pub type Rng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-random pure state: a normalized vector of i.i.d. complex Gaussians.
pub fn haar_state(rng: &mut Rng, dim: usize) -> QuantumState {
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut *rng),
                    StandardNormal.sample(&mut *rng),
                )
            })
            .collect();
        if let Ok(s) = QuantumState::from_unnormalized(amps) {
            return s;
        }
    }
}
