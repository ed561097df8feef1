//! One entry point over every decoder, with a common outcome type.

use std::fmt;
use std::str::FromStr;

use lpdual_core::ascent::{decode, DEFAULT_ANNEAL_LADDER};
use lpdual_core::baseline::{min_sum_decode, sum_product_decode, BpConfig};
use lpdual_core::subgradient::{decode_subgradient, StepSchedule, SubgradConfig};
use lpdual_core::{
    AscentConfig, DecodeError, IntervalPick, LlrVector, ParityCheckMatrix, Schedule, Ternary,
    TernaryDecision,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    CaSoft,
    CaHard,
    Subgrad,
    MinSum,
    SumProduct,
}

impl DecoderKind {
    pub const ALL: [Self; 5] = [Self::CaSoft, Self::CaHard, Self::Subgrad, Self::MinSum, Self::SumProduct];

    pub fn name(self) -> &'static str {
        match self {
            Self::CaSoft => "ca-soft",
            Self::CaHard => "ca-hard",
            Self::Subgrad => "subgrad",
            Self::MinSum => "min-sum",
            Self::SumProduct => "sum-product",
        }
    }

    /// Dual decoders report an objective and may issue certificates.
    pub fn is_dual(self) -> bool {
        matches!(self, Self::CaSoft | Self::CaHard | Self::Subgrad)
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown decoder {s:?}; expected one of ca-soft, ca-hard, subgrad, min-sum, sum-product"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoderSettings {
    pub kind: DecoderKind,
    /// Final inverse temperature of `ca-soft`.
    pub kappa: f64,
    /// Run the default annealing ladder before the final stage.
    pub anneal: bool,
    /// Explicit ladder, taking precedence over `anneal`.
    pub ladder: Option<Vec<f64>>,
    pub tol: f64,
    /// Sweeps per stage for coordinate ascent, iterations otherwise.
    /// `None` keeps each decoder's own default.
    pub max_sweeps: Option<usize>,
    pub schedule: Schedule,
    pub interval_pick: IntervalPick,
    pub step_c: f64,
    pub decision_tolerance: f64,
}

impl DecoderSettings {
    pub fn new(kind: DecoderKind) -> Self {
        let ascent = AscentConfig::default();
        Self {
            kind,
            kappa: 1.0,
            anneal: false,
            ladder: None,
            tol: ascent.convergence_tol,
            max_sweeps: None,
            schedule: ascent.schedule,
            interval_pick: ascent.interval_pick,
            step_c: 1.0,
            decision_tolerance: ascent.decision_tolerance,
        }
    }

    pub fn ascent_config(&self, seed: u64) -> Result<AscentConfig, DecodeError> {
        let mut cfg = match self.kind {
            DecoderKind::CaHard => AscentConfig::hard(),
            _ => AscentConfig::soft(self.kappa)?,
        };
        cfg.convergence_tol = self.tol;
        if let Some(s) = self.max_sweeps {
            cfg.max_sweeps = s;
        }
        cfg.schedule = self.schedule;
        cfg.interval_pick = self.interval_pick;
        cfg.rng_seed = seed;
        cfg.decision_tolerance = self.decision_tolerance;
        cfg.kappa_ladder = match (&self.ladder, self.anneal) {
            (Some(l), _) => Some(l.clone()),
            (None, true) => {
                // Keep the ladder below a soft final stage.
                let top = cfg.temperature.kappa().unwrap_or(f64::INFINITY);
                Some(DEFAULT_ANNEAL_LADDER.iter().copied().filter(|&k| k < top).collect())
            }
            (None, false) => None,
        };
        Ok(cfg)
    }

    pub fn subgrad_config(&self) -> SubgradConfig {
        let mut cfg = SubgradConfig {
            schedule: StepSchedule::Diminishing(self.step_c),
            decision_tolerance: self.decision_tolerance,
            ..SubgradConfig::default()
        };
        if let Some(s) = self.max_sweeps {
            cfg.max_iterations = s;
        }
        cfg
    }

    pub fn bp_config(&self) -> BpConfig {
        let mut cfg = BpConfig::default();
        if let Some(s) = self.max_sweeps {
            cfg.max_iterations = s;
        }
        cfg
    }
}

/// Result of one decode, whatever the decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub decision: TernaryDecision,
    /// Hard dual objective, for dual decoders.
    pub objective: Option<f64>,
    pub certified: bool,
    /// The output passed its own validity check: a certificate for dual
    /// decoders, convergence to a codeword for message passing.
    pub accepted: bool,
    pub iterations: usize,
    pub converged: bool,
}

impl Outcome {
    /// Number of positions not equal to `x`; erasures count as errors.
    pub fn bit_errors(&self, x: &[u8]) -> usize {
        self.decision
            .values
            .iter()
            .zip(x)
            .filter(|(d, &b)| **d != if b == 0 { Ternary::Zero } else { Ternary::One })
            .count()
    }
}

pub fn run_decoder(
    h: &ParityCheckMatrix,
    llr: &LlrVector,
    settings: &DecoderSettings,
    seed: u64,
) -> Result<Outcome, DecodeError> {
    match settings.kind {
        DecoderKind::CaSoft | DecoderKind::CaHard => {
            let r = decode(h, llr, &settings.ascent_config(seed)?)?;
            Ok(dual_outcome(r))
        }
        DecoderKind::Subgrad => Ok(dual_outcome(decode_subgradient(h, llr, &settings.subgrad_config())?)),
        DecoderKind::MinSum | DecoderKind::SumProduct => {
            let out = if settings.kind == DecoderKind::MinSum {
                min_sum_decode(h, llr, &settings.bp_config())?
            } else {
                sum_product_decode(h, llr, &settings.bp_config())?
            };
            let values = out
                .word
                .iter()
                .map(|&b| if b == 0 { Ternary::Zero } else { Ternary::One })
                .collect();
            Ok(Outcome {
                decision: TernaryDecision {
                    values,
                    tolerance: 0.0,
                },
                objective: None,
                certified: false,
                accepted: out.converged,
                iterations: out.iterations,
                converged: out.converged,
            })
        }
    }
}

fn dual_outcome(r: lpdual_core::DecodeReport) -> Outcome {
    let certified = r.certificate.is_some();
    Outcome {
        decision: r.decision,
        objective: Some(r.objective),
        certified,
        accepted: certified,
        iterations: r.sweeps_used,
        converged: r.converged,
    }
}

/// Human-readable report of a single decode.
pub fn render(outcome: &Outcome, kind: DecoderKind) -> String {
    let mut s = format!("decoder     {kind}\ndecision    {}\n", outcome.decision);
    if let Some(v) = outcome.objective {
        s.push_str(&format!("objective   {v:.12}\n"));
        s.push_str(&format!(
            "certificate {}\n",
            if outcome.certified { "yes" } else { "no" }
        ));
        s.push_str(&format!("sweeps      {}\n", outcome.iterations));
    } else {
        s.push_str(&format!("iterations  {}\n", outcome.iterations));
    }
    s.push_str(&format!("converged   {}\n", outcome.converged));
    s
}

