//! BPSK over AWGN: SNR conversion and log-likelihood ratios.
//!
//! Bits map as `0 → +1`, `1 → -1`. A positive LLR favors bit 0, so decoding
//! minimizes `⟨λ, x⟩`.

use alloc::vec::Vec;
use core::ops::Deref;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::DecodeError;

/// Default LLR saturation magnitude in nats.
pub const DEFAULT_SATURATION: f64 = 1e6;

/// Per-position log-likelihood ratios `λ_i = log P(y_i | 0) / P(y_i | 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LlrVector(Vec<f64>);

impl LlrVector {
    /// Wraps raw values, clamping them to `±DEFAULT_SATURATION`.
    pub fn new(values: Vec<f64>) -> Self {
        Self::saturated(values, DEFAULT_SATURATION)
    }

    pub fn saturated(mut values: Vec<f64>, limit: f64) -> Self {
        for v in &mut values {
            *v = if v.is_nan() { 0.0 } else { v.clamp(-limit, limit) };
        }
        Self(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// `⟨λ, x⟩` for a binary word.
    pub fn cost(&self, x: &[u8]) -> f64 {
        self.0.iter().zip(x).filter(|(_, &b)| b != 0).map(|(l, _)| l).sum()
    }
}

impl Deref for LlrVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for LlrVector {
    fn from(values: Vec<f64>) -> Self {
        Self::new(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    sigma: f64,
    rate: f64,
}

impl ChannelConfig {
    pub fn new(sigma: f64, rate: f64) -> Result<Self, DecodeError> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(DecodeError::InvalidParameter("sigma must be positive"));
        }
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(DecodeError::InvalidParameter("rate must lie in (0, 1]"));
        }
        Ok(Self { sigma, rate })
    }

    pub fn from_ebn0(ebn0_db: f64, rate: f64) -> Result<Self, DecodeError> {
        Self::new(ebn0_to_sigma(ebn0_db, rate)?, rate)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

/// BPSK symbol of a bit.
#[inline]
pub fn bpsk(bit: u8) -> f64 {
    if bit & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Noise standard deviation for a given `Eb/N0` in dB and code rate.
pub fn ebn0_to_sigma(ebn0_db: f64, rate: f64) -> Result<f64, DecodeError> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(DecodeError::InvalidParameter("rate must lie in (0, 1]"));
    }
    Ok(1.0 / libm::sqrt(2.0 * rate * libm::pow(10.0, ebn0_db / 10.0)))
}

/// Standard normal sample for position `index` of the stream `seed`.
///
/// Each position owns a fixed block of the ChaCha8 keystream and turns two
/// of its words into a normal deviate by Box–Muller.
pub fn gaussian_at(seed: u64, index: u64) -> f64 {
    gaussian_from(&mut ChaCha8Rng::seed_from_u64(seed), index)
}

fn gaussian_from(rng: &mut ChaCha8Rng, index: u64) -> f64 {
    rng.set_word_pos(u128::from(index) * 4);
    // 53-bit uniforms; `u1` lies in (0, 1] so the logarithm is finite.
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64;
    let u2 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

/// Received BPSK symbols `y_i = bpsk(x_i) + σ g_i` with `g_i = gaussian_at(seed, i)`.
pub fn simulate_frame(x: &[u8], cfg: &ChannelConfig, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    x.iter()
        .enumerate()
        .map(|(i, &b)| bpsk(b) + cfg.sigma * gaussian_from(&mut rng, i as u64))
        .collect()
}

/// Channel LLRs `2 y_i / σ²`.
pub fn llr_awgn(y: &[f64], sigma: f64) -> Result<LlrVector, DecodeError> {
    if !(sigma > 0.0) {
        return Err(DecodeError::InvalidParameter("sigma must be positive"));
    }
    let scale = 2.0 / (sigma * sigma);
    Ok(LlrVector::new(y.iter().map(|&v| scale * v).collect()))
}
