//! Numerical thresholds and the seeded random number generator.
//!
//! Every tolerance used anywhere in the crate lives here, so reproducibility
//! studies can sweep them from one place.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// All numerical thresholds in one place.
///
/// * `eps_rank`: relative singular-value cutoff for rank decisions,
/// * `eps_residual`: Frobenius-relative acceptance threshold for
///   certificates and reconstructions,
/// * `eps_cluster`: eigenvalue grouping tolerance on the unit circle,
/// * `max_iter` / `restarts`: budgets for the alternating-projection
///   searches,
/// * `seed`: master seed for every randomized operation.
#[derive(Debug, Clone, PartialEq)]
pub struct ToleranceConfig {
    pub eps_rank: f64,
    pub eps_residual: f64,
    pub eps_cluster: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps_rank: 1e-9,
            eps_residual: 1e-6,
            eps_cluster: 1e-7,
            max_iter: 500,
            restarts: 32,
            seed: 0,
        }
    }
}

impl ToleranceConfig {
    /// Panics on nonsensical settings; thresholds must be positive and the
    /// budgets at least one.
    pub fn validate(&self) -> crate::error::Result<()> {
        if !(self.eps_rank > 0.0 && self.eps_residual > 0.0 && self.eps_cluster > 0.0) {
            return Err(crate::Error::InvalidInput(
                "tolerances must be strictly positive".into(),
            ));
        }
        if self.max_iter < 1 || self.restarts < 1 {
            return Err(crate::Error::InvalidInput(
                "max_iter and restarts must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Orthonormality tolerance for frames and unitaries.
    pub fn eps_orth(&self) -> f64 {
        self.eps_residual
    }

    /// Fresh deterministic generator for this configuration.
    pub fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.seed)
    }
}

/// Deterministic sub-seed derivation, so composite generators can hand
/// independent streams to their operands.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = master ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Standard normal via Box-Muller, so the stream depends only on the
/// generator and not on distribution-crate internals.
pub fn gaussian(rng: &mut impl Rng) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > f64::MIN_POSITIVE {
            let v: f64 = rng.random();
            return (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos();
        }
    }
}

/// Complex standard normal (unit total variance).
pub fn gaussian_complex(rng: &mut impl Rng) -> Complex<f64> {
    Complex::new(gaussian(rng), gaussian(rng)) / 2f64.sqrt()
}
