//! Flooding min-sum and sum-product decoders.
//!
//! Both use the parity trellis of the dual decoders for the check-node rule:
//! in the hard limit it is the sign-product/min-magnitude rule and at `κ = 1`
//! it is the tanh rule.

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::LlrVector;
use crate::code::ParityCheckMatrix;
use crate::error::DecodeError;
use crate::softmin::{parity_message, Temperature};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpConfig {
    pub max_iterations: usize,
    pub early_stop_on_syndrome: bool,
    /// Weight of the previous check message, in `[0, 1)`.
    pub damping: f64,
}

impl Default for BpConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            early_stop_on_syndrome: true,
            damping: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpOutcome {
    pub word: Vec<u8>,
    pub iterations: usize,
    /// The word satisfies every check and no position was a tie.
    pub converged: bool,
    /// Positions whose total LLR was exactly zero; they decide to 0.
    pub ties: usize,
}

/// Check-to-variable message from the other incoming LLRs.
pub fn min_sum_check_rule(incoming: &[f64]) -> f64 {
    parity_message(incoming.iter().copied(), Temperature::Hard)
}

/// Tanh-rule check message, evaluated in the log domain.
pub fn sum_product_check_rule(incoming: &[f64]) -> f64 {
    parity_message(incoming.iter().copied(), Temperature::Soft(1.0))
}

pub fn min_sum_decode(h: &ParityCheckMatrix, llr: &LlrVector, cfg: &BpConfig) -> Result<BpOutcome, DecodeError> {
    flooding(h, llr, cfg, Temperature::Hard)
}

pub fn sum_product_decode(h: &ParityCheckMatrix, llr: &LlrVector, cfg: &BpConfig) -> Result<BpOutcome, DecodeError> {
    flooding(h, llr, cfg, Temperature::Soft(1.0))
}

fn flooding(h: &ParityCheckMatrix, llr: &LlrVector, cfg: &BpConfig, t: Temperature) -> Result<BpOutcome, DecodeError> {
    if llr.len() != h.n() {
        return Err(DecodeError::LengthMismatch {
            expected: h.n(),
            found: llr.len(),
        });
    }
    if cfg.max_iterations == 0 {
        return Err(DecodeError::InvalidParameter("max_iterations must be at least 1"));
    }
    if !(0.0..1.0).contains(&cfg.damping) {
        return Err(DecodeError::InvalidParameter("damping must lie in [0, 1)"));
    }
    let edges = h.num_edges();
    let mut to_check = vec![0.0; edges];
    let mut to_var = vec![0.0; edges];
    let mut total = vec![0.0; h.n()];
    let mut word = vec![0u8; h.n()];
    let mut others = Vec::new();
    let mut outcome = BpOutcome {
        word: Vec::new(),
        iterations: 0,
        converged: false,
        ties: 0,
    };

    for iteration in 1..=cfg.max_iterations {
        for i in 0..h.n() {
            let sum: f64 = h.var_edges(i).iter().map(|&e| to_var[e]).sum();
            for &e in h.var_edges(i) {
                to_check[e] = llr[i] + sum - to_var[e];
            }
        }
        for j in 0..h.m() {
            for e in h.check_edges(j) {
                others.clear();
                others.extend(h.check_edges(j).filter(|&f| f != e).map(|f| to_check[f]));
                let fresh = parity_message(others.iter().copied(), t);
                let fresh = if fresh.is_finite() { fresh } else { 0.0 };
                to_var[e] = (1.0 - cfg.damping) * fresh + cfg.damping * to_var[e];
            }
        }
        let mut ties = 0;
        for i in 0..h.n() {
            total[i] = llr[i] + h.var_edges(i).iter().map(|&e| to_var[e]).sum::<f64>();
            ties += usize::from(total[i] == 0.0);
            word[i] = u8::from(total[i] < 0.0);
        }
        let satisfied = h.is_codeword(&word);
        outcome.iterations = iteration;
        outcome.ties = ties;
        outcome.converged = satisfied && ties == 0;
        if cfg.early_stop_on_syndrome && outcome.converged {
            break;
        }
    }
    outcome.word = word;
    Ok(outcome)
}
