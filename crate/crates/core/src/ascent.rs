//! Coordinate ascent on the dual, one edge at a time.
//!
//! With a finite inverse temperature each edge is set to the unique maximizer
//! `½(s_diff - t_diff)` of its softened objective. In the hard limit the
//! edge objective is flat between `s_diff` and `-t_diff`, and any point of
//! that interval is a maximizer; the pick policy chooses one.

use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{LlrVector, DEFAULT_SATURATION};
use crate::code::{EdgeId, ParityCheckMatrix};
use crate::dual::{edge_objective_from, Certificate, DualState, TernaryDecision, DEFAULT_DECISION_TOLERANCE};
use crate::error::DecodeError;
use crate::softmin::Temperature;

/// Inverse temperatures visited by an annealed decode.
pub const DEFAULT_ANNEAL_LADDER: [f64; 4] = [1.0, 4.0, 16.0, 64.0];

/// Relative tolerance below which an update counts as non-decreasing.
pub const MONOTONE_TOLERANCE: f64 = 1e-9;

/// Order in which edges are visited within a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Cyclic,
    /// A fresh uniformly random order every sweep.
    RandomPermutation,
}

/// Point of the maximizing interval chosen by a hard update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalPick {
    Random,
    Midpoint,
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AscentConfig {
    pub temperature: Temperature,
    /// Sweep budget per stage.
    pub max_sweeps: usize,
    /// A stage ends once no edge moved by more than this in a full sweep.
    pub convergence_tol: f64,
    pub schedule: Schedule,
    pub interval_pick: IntervalPick,
    pub rng_seed: u64,
    /// Soft stages run to convergence, in order, before the final stage at
    /// `temperature`.
    pub kappa_ladder: Option<Vec<f64>>,
    pub decision_tolerance: f64,
    /// Hard stages also end after this many consecutive sweeps without
    /// objective gain above `convergence_tol`.
    pub stall_sweeps: usize,
}

impl Default for AscentConfig {
    fn default() -> Self {
        Self {
            temperature: Temperature::Soft(1.0),
            max_sweeps: 200,
            convergence_tol: 1e-8,
            schedule: Schedule::Cyclic,
            interval_pick: IntervalPick::Random,
            rng_seed: 0,
            kappa_ladder: None,
            decision_tolerance: DEFAULT_DECISION_TOLERANCE,
            stall_sweeps: 10,
        }
    }
}

impl AscentConfig {
    pub fn soft(kappa: f64) -> Result<Self, DecodeError> {
        Ok(Self {
            temperature: Temperature::soft(kappa)?,
            ..Self::default()
        })
    }

    pub fn hard() -> Self {
        Self {
            temperature: Temperature::Hard,
            ..Self::default()
        }
    }

    /// Soft stages at `{1, 4, 16, 64}` followed by `temperature`.
    pub fn annealed(mut self) -> Self {
        self.kappa_ladder = Some(DEFAULT_ANNEAL_LADDER.to_vec());
        self
    }

    fn validate(&self) -> Result<(), DecodeError> {
        if self.max_sweeps == 0 {
            return Err(DecodeError::InvalidParameter("max_sweeps must be at least 1"));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(DecodeError::InvalidParameter("convergence_tol must be positive"));
        }
        if !(self.decision_tolerance >= 0.0) {
            return Err(DecodeError::InvalidParameter("decision tolerance must be nonnegative"));
        }
        if let Some(ladder) = &self.kappa_ladder {
            for &k in ladder {
                Temperature::soft(k)?;
            }
            if ladder.windows(2).any(|w| w[1] <= w[0]) {
                return Err(DecodeError::InvalidParameter("kappa ladder must be increasing"));
            }
        }
        Ok(())
    }

    fn stages(&self) -> Vec<Temperature> {
        let mut stages: Vec<Temperature> = self
            .kappa_ladder
            .iter()
            .flatten()
            .map(|&k| Temperature::Soft(k))
            .collect();
        if stages.last() != Some(&self.temperature) {
            stages.push(self.temperature);
        }
        stages
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Checks of weight below three; convergence is not guaranteed.
    LowWeightRows(Vec<usize>),
    /// The sweep budget ran out at this temperature.
    NotConverged(Temperature),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LowWeightRows(rows) => write!(f, "{} check(s) of weight below 3", rows.len()),
            Self::NotConverged(Temperature::Hard) => write!(f, "no convergence in the hard stage"),
            Self::NotConverged(Temperature::Soft(k)) => write!(f, "no convergence at kappa = {k}"),
        }
    }
}

/// Per-update bookkeeping of the local objective change.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct UpdateStats {
    pub updates: u64,
    /// Updates whose objective change was below `-MONOTONE_TOLERANCE`
    /// relative to the local objective.
    pub decreases: u64,
    /// Largest relative decrease seen, or 0.
    pub worst_decrease: f64,
}

impl UpdateStats {
    pub(crate) fn record(&mut self, before: f64, after: f64) {
        self.updates += 1;
        let drop = (before - after) / (1.0 + before.abs());
        if drop > MONOTONE_TOLERANCE {
            self.decreases += 1;
        }
        self.worst_decrease = self.worst_decrease.max(drop);
    }
}

/// Outcome of a dual decode.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeReport {
    pub decision: TernaryDecision,
    pub certificate: Option<Certificate>,
    /// Hard dual objective of the final state, a lower bound on the LP value.
    pub objective: f64,
    /// Dual objective after every sweep, at that sweep's temperature.
    pub objective_trace: Vec<f64>,
    pub sweeps_used: usize,
    pub converged: bool,
    pub warnings: Vec<Warning>,
    pub updates: UpdateStats,
    /// Final edge values.
    pub edge_values: Vec<f64>,
}

/// The maximizing interval of a hard update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardUpdate {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

/// Sets edge `e` to `½(s_diff - t_diff)` and returns the new value.
pub fn update_edge_soft(state: &mut DualState<'_>, e: EdgeId, t: Temperature) -> Result<f64, DecodeError> {
    if t.is_hard() {
        return Err(DecodeError::NeedsFiniteTemperature);
    }
    check_edge(state, e)?;
    let pair = state.message_pair(e, t);
    let value = soft_target(pair.s_diff, pair.t_diff);
    state.set_value(e, value);
    Ok(value)
}

/// The closed interval between `s_diff` and `-t_diff` (hard messages).
pub fn hard_interval(state: &DualState<'_>, e: EdgeId) -> Result<(f64, f64), DecodeError> {
    check_edge(state, e)?;
    let pair = state.message_pair(e, Temperature::Hard);
    Ok(interval(pair.s_diff, pair.t_diff))
}

/// Moves edge `e` to a point of its maximizing interval chosen by `pick`.
pub fn update_edge_hard<R: Rng + ?Sized>(
    state: &mut DualState<'_>,
    e: EdgeId,
    pick: IntervalPick,
    rng: &mut R,
) -> Result<HardUpdate, DecodeError> {
    let (lo, hi) = hard_interval(state, e)?;
    let value = choose(lo, hi, pick, rng);
    state.set_value(e, value);
    Ok(HardUpdate { lo, hi, value })
}

fn check_edge(state: &DualState<'_>, e: EdgeId) -> Result<(), DecodeError> {
    if e >= state.code().num_edges() {
        return Err(DecodeError::InvalidParameter("edge id out of range"));
    }
    Ok(())
}

// A check of degree one forces its bit to zero and leaves the edge objective
// without a finite maximizer; such edges are pushed to the saturation level.
fn soft_target(s_diff: f64, t_diff: f64) -> f64 {
    if t_diff.is_finite() {
        0.5 * (s_diff - t_diff)
    } else {
        s_diff - DEFAULT_SATURATION
    }
}

fn interval(s_diff: f64, t_diff: f64) -> (f64, f64) {
    let other = if t_diff.is_finite() { -t_diff } else { s_diff - DEFAULT_SATURATION };
    (s_diff.min(other), s_diff.max(other))
}

fn choose<R: Rng + ?Sized>(lo: f64, hi: f64, pick: IntervalPick, rng: &mut R) -> f64 {
    match pick {
        IntervalPick::Lower => lo,
        IntervalPick::Upper => hi,
        IntervalPick::Midpoint => 0.5 * (lo + hi),
        IntervalPick::Random => {
            if hi > lo {
                lo + (hi - lo) * rng.random::<f64>()
            } else {
                lo
            }
        }
    }
}

/// Coordinate-ascent decoding from the all-zero dual state.
pub fn decode(h: &ParityCheckMatrix, llr: &LlrVector, cfg: &AscentConfig) -> Result<DecodeReport, DecodeError> {
    cfg.validate()?;
    let mut state = DualState::new(h, llr)?;
    let mut run = Run::new(h, cfg);
    for t in cfg.stages() {
        run.stage(&mut state, t);
    }
    Ok(run.finish(&state))
}

/// Coordinate ascent continued from an arbitrary state.
pub fn decode_from(state: &mut DualState<'_>, cfg: &AscentConfig) -> Result<DecodeReport, DecodeError> {
    cfg.validate()?;
    let mut run = Run::new(state.code(), cfg);
    for t in cfg.stages() {
        run.stage(state, t);
    }
    Ok(run.finish(state))
}

struct Run<'c> {
    cfg: &'c AscentConfig,
    rng: ChaCha8Rng,
    order: Vec<EdgeId>,
    trace: Vec<f64>,
    sweeps: usize,
    converged: bool,
    warnings: Vec<Warning>,
    stats: UpdateStats,
}

impl<'c> Run<'c> {
    fn new(h: &ParityCheckMatrix, cfg: &'c AscentConfig) -> Self {
        let low = h.low_weight_rows();
        let warnings = if low.is_empty() {
            Vec::new()
        } else {
            alloc::vec![Warning::LowWeightRows(low)]
        };
        Self {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.rng_seed),
            order: (0..h.num_edges()).collect(),
            trace: Vec::new(),
            sweeps: 0,
            converged: false,
            warnings,
            stats: UpdateStats::default(),
        }
    }

    fn stage(&mut self, state: &mut DualState<'_>, t: Temperature) {
        let cfg = self.cfg;
        let mut stalled = 0;
        let mut previous = state.objective_value(t);
        self.converged = false;
        for _ in 0..cfg.max_sweeps {
            if cfg.schedule == Schedule::RandomPermutation {
                self.order.shuffle(&mut self.rng);
            }
            let mut moved: f64 = 0.0;
            for k in 0..self.order.len() {
                let e = self.order[k];
                moved = moved.max(self.update(state, e, t));
            }
            self.sweeps += 1;
            let value = state.objective_value(t);
            self.trace.push(value);
            if moved < cfg.convergence_tol {
                self.converged = true;
                break;
            }
            if t.is_hard() {
                if state.certify().is_some() {
                    self.converged = true;
                    break;
                }
                if value - previous <= cfg.convergence_tol * (1.0 + value.abs()) {
                    stalled += 1;
                    if stalled >= cfg.stall_sweeps {
                        self.converged = true;
                        break;
                    }
                } else {
                    stalled = 0;
                }
            }
            previous = value;
        }
        if !self.converged {
            self.warnings.push(Warning::NotConverged(t));
        }
    }

    /// Updates one edge and returns how far it moved.
    fn update(&mut self, state: &mut DualState<'_>, e: EdgeId, t: Temperature) -> f64 {
        let s = state.edge_variable_message(e);
        let partial = state.edge_check_partials(e, t);
        let old = state.value(e);
        let new = if t.is_hard() {
            let (lo, hi) = interval(s, partial.diff());
            choose(lo, hi, self.cfg.interval_pick, &mut self.rng)
        } else {
            soft_target(s, partial.diff())
        };
        let before = edge_objective_from(s, partial, old, t);
        let after = edge_objective_from(s, partial, new, t);
        self.stats.record(before, after);
        state.set_value(e, new);
        (new - old).abs()
    }

    fn finish(self, state: &DualState<'_>) -> DecodeReport {
        DecodeReport {
            decision: state.decide(self.cfg.decision_tolerance),
            certificate: state.certify(),
            objective: state.objective_value(Temperature::Hard),
            objective_trace: self.trace,
            sweeps_used: self.sweeps,
            converged: self.converged,
            warnings: self.warnings,
            updates: self.stats,
            edge_values: state.values().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_ml, grid_argmax_h, EdgeEnergies};
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    fn hamming() -> ParityCheckMatrix {
        ParityCheckMatrix::from_rows(7, &[vec![0, 1, 2, 4], vec![1, 2, 3, 5], vec![0, 1, 3, 6]]).unwrap()
    }

    #[test]
    fn soft_target_examples() {
        assert_eq!(soft_target(4.0, -2.0), 3.0);
        assert_eq!(soft_target(0.0, 0.0), 0.0);
        assert_eq!(interval(4.0, -2.0), (2.0, 4.0));
        assert_eq!(interval(1.5, -1.5), (1.5, 1.5));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(choose(2.0, 4.0, IntervalPick::Midpoint, &mut rng), 3.0);
        assert_eq!(choose(1.5, 1.5, IntervalPick::Random, &mut rng), 1.5);
        let r = choose(2.0, 4.0, IntervalPick::Random, &mut rng);
        assert!((2.0..=4.0).contains(&r));
    }

    #[test]
    fn soft_update_matches_grid() {
        let h = hamming();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let llr = LlrVector::new((0..7).map(|_| rng.random_range(-3.0..3.0)).collect());
            let values = (0..h.num_edges()).map(|_| rng.random_range(-2.0..2.0)).collect();
            let mut state = DualState::with_values(&h, &llr, values).unwrap();
            let e = rng.random_range(0..h.num_edges());
            let t = Temperature::soft(1.0).unwrap();
            let grid = grid_argmax_h(&state, e, t, -20.0, 20.0, 1e-3).unwrap();
            let before = state.edge_objective(e, state.value(e), t);
            let u = update_edge_soft(&mut state, e, t).unwrap();
            assert!((u - grid.points[0]).abs() <= 2e-3);
            assert!(state.edge_objective(e, u, t) >= before - 1e-12);
        }
    }

    #[test]
    fn hard_interval_is_flat_top() {
        let h = hamming();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let llr = LlrVector::new((0..7).map(|_| rng.random_range(-3.0..3.0)).collect());
            let values = (0..h.num_edges()).map(|_| rng.random_range(-2.0..2.0)).collect();
            let state = DualState::with_values(&h, &llr, values).unwrap();
            let e = rng.random_range(0..h.num_edges());
            let (lo, hi) = hard_interval(&state, e).unwrap();
            let energies = EdgeEnergies::of(&state, e, Temperature::Hard);
            let top = energies.h(lo);
            for k in 0..=10 {
                assert_abs_diff_eq!(energies.h(lo + (hi - lo) * f64::from(k) / 10.0), top, epsilon = 1e-9);
            }
            if hi > lo {
                assert!(energies.h(lo - 0.1) < top);
                assert!(energies.h(hi + 0.1) < top);
            }
        }
    }

    #[test]
    fn positive_llrs_certify_zero() {
        let h = hamming();
        let llr = LlrVector::new(vec![0.7, 1.2, 2.0, 0.3, 1.0, 0.9, 1.5]);
        for cfg in [AscentConfig::default(), AscentConfig::hard()] {
            let report = decode(&h, &llr, &cfg).unwrap();
            assert_eq!(report.decision.to_word(), Some(vec![0; 7]));
            let cert = report.certificate.expect("certificate");
            assert_eq!(cert.value, 0.0);
            assert!(report.converged);
        }
    }

    #[test]
    fn zero_llr_decides_all_erased() {
        let h = hamming();
        let llr = LlrVector::new(vec![0.0; 7]);
        let report = decode(&h, &llr, &AscentConfig::default()).unwrap();
        assert_eq!(report.decision.erasures(), 7);
        assert!(report.certificate.is_none());
    }

    #[test]
    fn soft_trace_is_monotone_and_updates_never_decrease() {
        let h = hamming();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let llr = LlrVector::new((0..7).map(|_| rng.random_range(-2.0..4.0)).collect());
            let report = decode(&h, &llr, &AscentConfig::default()).unwrap();
            assert_eq!(report.updates.decreases, 0);
            for w in report.objective_trace.windows(2) {
                assert!(w[1] >= w[0] - 1e-9 * (1.0 + w[0].abs()));
            }
        }
    }

    #[test]
    fn local_gain_equals_global_change() {
        let h = hamming();
        let llr = LlrVector::new(vec![-0.4, 1.1, 0.2, -0.9, 1.7, 0.5, -0.1]);
        let mut state = DualState::new(&h, &llr).unwrap();
        let t = Temperature::soft(2.0).unwrap();
        for e in 0..h.num_edges() {
            let before_local = state.edge_objective(e, state.value(e), t);
            let before = state.objective_value(t);
            let u = update_edge_soft(&mut state, e, t).unwrap();
            let after_local = state.edge_objective(e, u, t);
            assert_abs_diff_eq!(state.objective_value(t) - before, after_local - before_local, epsilon = 1e-12);
        }
    }

    #[test]
    fn annealed_hard_decode_matches_ml_at_high_snr() {
        let h = hamming();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let llr = LlrVector::new((0..7).map(|_| 2.0 * (1.0 + 0.4 * rng.random_range(-1.5..1.5)) / 0.16).collect());
            let report = decode(&h, &llr, &AscentConfig::hard().annealed()).unwrap();
            let (ml, value) = brute_force_ml(&h, &llr).unwrap();
            let cert = report.certificate.expect("certificate");
            assert_eq!(cert.x, ml);
            assert_abs_diff_eq!(cert.value, value, epsilon = 1e-9);
        }
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let h = hamming();
        let llr = LlrVector::new(vec![1.0; 7]);
        let cfg = AscentConfig {
            max_sweeps: 0,
            ..AscentConfig::default()
        };
        assert!(decode(&h, &llr, &cfg).is_err());
        let cfg = AscentConfig {
            kappa_ladder: Some(vec![4.0, 1.0]),
            ..AscentConfig::default()
        };
        assert!(decode(&h, &llr, &cfg).is_err());
        assert!(decode(&h, &LlrVector::new(vec![1.0; 3]), &AscentConfig::default()).is_err());
    }
}
