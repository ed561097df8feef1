//! Incremental subgradient ascent on the hard dual.
//!
//! Each iteration first moves every check node along the negated argmin of
//! its local energy, then every variable node along its own. The channel
//! coordinates `u'_{i,0} = -λ_i` are never touched.

use alloc::vec;
use alloc::vec::Vec;

use crate::ascent::{DecodeReport, UpdateStats};
use crate::channel::LlrVector;
use crate::code::ParityCheckMatrix;
use crate::dual::{DualState, DEFAULT_DECISION_TOLERANCE};
use crate::error::DecodeError;
use crate::softmin::Temperature;

/// Step size `μ_ℓ` at iteration `ℓ = 1, 2, ...`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSchedule {
    /// `c / ℓ`.
    Diminishing(f64),
    Constant(f64),
}

impl StepSchedule {
    pub fn step(self, iteration: usize) -> f64 {
        match self {
            Self::Diminishing(c) => c / iteration as f64,
            Self::Constant(c) => c,
        }
    }

    fn scale(self) -> f64 {
        match self {
            Self::Diminishing(c) | Self::Constant(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubgradConfig {
    pub schedule: StepSchedule,
    pub max_iterations: usize,
    pub decision_tolerance: f64,
    /// End early once the best state so far carries a certificate.
    pub stop_on_certificate: bool,
}

impl Default for SubgradConfig {
    fn default() -> Self {
        Self {
            schedule: StepSchedule::Diminishing(1.0),
            max_iterations: 5000,
            decision_tolerance: DEFAULT_DECISION_TOLERANCE,
            stop_on_certificate: true,
        }
    }
}

/// Lexicographically smallest even-weight word minimizing `Σ c_k b_k`, up to
/// a relative tolerance of `1e-12`.
fn lex_parity_argmin(costs: &[f64]) -> Vec<u8> {
    let d = costs.len();
    // suffix[k] = (even, odd) minimum energies over positions k..d.
    let mut suffix = vec![[0.0, f64::INFINITY]; d + 1];
    for k in (0..d).rev() {
        let [even, odd] = suffix[k + 1];
        suffix[k] = [even.min(odd + costs[k]), odd.min(even + costs[k])];
    }
    let best = suffix[0][0];
    let tol = 1e-12 * (1.0 + costs.iter().map(|c| c.abs()).sum::<f64>());
    let mut word = vec![0u8; d];
    let (mut acc, mut parity) = (0.0, 0usize);
    for k in 0..d {
        if acc + suffix[k + 1][parity] > best + tol {
            word[k] = 1;
            acc += costs[k];
            parity ^= 1;
        }
    }
    word
}

/// `-b*` for check `j`, where `b*` minimizes `⟨-v'_j, b⟩` over `B_j`, in the
/// order of `I_j`. Ties go to the lexicographically smallest minimizer.
pub fn check_subgradient(state: &DualState<'_>, j: usize) -> Vec<f64> {
    let code = state.code();
    let costs: Vec<f64> = code.check_edges(j).map(|e| state.value(e)).collect();
    lex_parity_argmin(&costs).iter().map(|&b| -f64::from(b)).collect()
}

/// `-a*` on the edge coordinates of variable `i`, in the order of `J_i`.
/// Ties go to the all-zeros word.
pub fn variable_subgradient(state: &DualState<'_>, i: usize) -> Vec<f64> {
    let g = if state.ones_energy(i) < 0.0 { -1.0 } else { 0.0 };
    vec![g; state.code().var_degree(i)]
}

/// Subgradient decoding from the all-zero state.
///
/// The decision and certificate are taken from the best state seen.
pub fn decode_subgradient(
    h: &ParityCheckMatrix,
    llr: &LlrVector,
    cfg: &SubgradConfig,
) -> Result<DecodeReport, DecodeError> {
    if cfg.max_iterations == 0 {
        return Err(DecodeError::InvalidParameter("max_iterations must be at least 1"));
    }
    if !(cfg.schedule.scale() > 0.0) {
        return Err(DecodeError::InvalidParameter("step scale must be positive"));
    }
    let mut state = DualState::new(h, llr)?;
    let mut best_value = state.objective_value(Temperature::Hard);
    let mut best = state.values().to_vec();
    let mut trace = Vec::with_capacity(cfg.max_iterations);
    let mut stats = UpdateStats::default();
    let mut previous = best_value;
    let mut iterations = 0;
    let mut converged = false;

    for l in 1..=cfg.max_iterations {
        iterations = l;
        let mu = cfg.schedule.step(l);
        let mut moved = false;
        for j in 0..h.m() {
            let g = check_subgradient(&state, j);
            for (e, gk) in h.check_edges(j).zip(g) {
                if gk != 0.0 {
                    // v' = -u', so a step of +μg on v' is -μg on u'.
                    state.values_mut()[e] -= mu * gk;
                    moved = true;
                }
            }
        }
        for i in 0..h.n() {
            let g = variable_subgradient(&state, i);
            for (&e, gk) in h.var_edges(i).iter().zip(g) {
                if gk != 0.0 {
                    state.values_mut()[e] += mu * gk;
                    moved = true;
                }
            }
        }
        let value = state.objective_value(Temperature::Hard);
        trace.push(value);
        stats.record(previous, value);
        previous = value;
        if value > best_value {
            best_value = value;
            best.copy_from_slice(state.values());
        }
        if !moved {
            converged = true;
            break;
        }
        if cfg.stop_on_certificate && value == best_value && state.certify().is_some() {
            converged = true;
            break;
        }
    }

    let best_state = DualState::with_values(h, llr, best)?;
    Ok(DecodeReport {
        decision: best_state.decide(cfg.decision_tolerance),
        certificate: best_state.certify(),
        objective: best_value,
        objective_trace: trace,
        sweeps_used: iterations,
        converged,
        warnings: Vec::new(),
        updates: stats,
        edge_values: best_state.values().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_local, lp_oracle, LocalKind};
    use proptest::prelude::*;

    fn single_check_state<'a>(h: &'a ParityCheckMatrix, llr: &'a LlrVector, v: &[f64]) -> DualState<'a> {
        DualState::with_values(h, llr, v.iter().map(|x| -x).collect()).unwrap()
    }

    #[test]
    fn check_subgradient_examples() {
        let h = ParityCheckMatrix::from_rows(3, &[vec![0, 1, 2]]).unwrap();
        let llr = LlrVector::new(vec![0.0; 3]);
        let state = single_check_state(&h, &llr, &[2.0, -3.0, 1.0]);
        assert_eq!(check_subgradient(&state, 0), vec![-1.0, 0.0, -1.0]);
        let zero = single_check_state(&h, &llr, &[0.0, 0.0, 0.0]);
        assert_eq!(check_subgradient(&zero, 0), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn variable_subgradient_examples() {
        let h = ParityCheckMatrix::from_rows(3, &[vec![0, 1, 2], vec![0, 1]]).unwrap();
        let llr = LlrVector::new(vec![1.5, -0.5, 0.0]);
        let state = DualState::new(&h, &llr).unwrap();
        assert_eq!(variable_subgradient(&state, 0), vec![0.0, 0.0]);
        assert_eq!(variable_subgradient(&state, 1), vec![-1.0, -1.0]);
        assert_eq!(variable_subgradient(&state, 2), vec![0.0]);
    }

    #[test]
    fn lex_argmin_is_smallest_minimizer() {
        let costs = [0.0, 0.0, 1.0, 0.0];
        assert_eq!(lex_parity_argmin(&costs), vec![0, 0, 0, 0]);
        let costs = [1.0, -1.0, -1.0, 2.0];
        assert_eq!(lex_parity_argmin(&costs), vec![0, 1, 1, 0]);
        // 1100, 1010 and 0110 all cost -2.
        let costs = [-1.0, -1.0, -1.0, 5.0];
        assert_eq!(lex_parity_argmin(&costs), vec![0, 1, 1, 0]);
    }

    proptest! {
        #[test]
        fn lex_argmin_matches_enumeration(costs in prop::collection::vec(-3i32..3, 2..9)) {
            let costs: Vec<f64> = costs.into_iter().map(f64::from).collect();
            let words = enumerate_local(LocalKind::EvenWeight, costs.len(), None).unwrap();
            let energy = |w: &Vec<u8>| -> f64 { w.iter().zip(&costs).map(|(&b, c)| f64::from(b) * c).sum() };
            let best = words.iter().map(energy).fold(f64::INFINITY, f64::min);
            let lex = words.iter().filter(|w| energy(w) == best).min().unwrap();
            prop_assert_eq!(&lex_parity_argmin(&costs), lex);
        }

        #[test]
        fn check_subgradient_inequality(
            v in prop::collection::vec(-4.0f64..4.0, 3..8),
            w in prop::collection::vec(-4.0f64..4.0, 8),
        ) {
            let d = v.len();
            let h = ParityCheckMatrix::from_rows(d, &[(0..d).collect::<Vec<_>>()]).unwrap();
            let llr = LlrVector::new(vec![0.0; d]);
            let sv = single_check_state(&h, &llr, &v);
            let sw = single_check_state(&h, &llr, &w[..d]);
            let g = check_subgradient(&sv, 0);
            let f = |s: &DualState<'_>| s.check_energy(0, Temperature::Hard);
            let linear: f64 = g.iter().zip(w.iter().zip(&v)).map(|(gk, (a, b))| gk * (a - b)).sum();
            prop_assert!(f(&sw) <= f(&sv) + linear + 1e-12);
        }
    }

    #[test]
    fn fixed_point_is_left_alone() {
        // Positive costs and zero state: every argmin is the zero word.
        let h = ParityCheckMatrix::from_rows(4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let llr = LlrVector::new(vec![1.0, 2.0, 0.5, 1.5]);
        let report = decode_subgradient(&h, &llr, &SubgradConfig::default()).unwrap();
        assert_eq!(report.sweeps_used, 1);
        assert!(report.edge_values.iter().all(|&u| u == 0.0));
        assert!(report.converged);
    }

    #[test]
    fn best_so_far_approaches_lp_value() {
        let h = ParityCheckMatrix::from_rows(7, &[vec![0, 1, 2, 4], vec![1, 2, 3, 5], vec![0, 1, 3, 6]]).unwrap();
        let llr = LlrVector::new(vec![-0.8, 1.3, 0.4, -0.2, 1.1, 0.9, 0.6]);
        let cfg = SubgradConfig {
            stop_on_certificate: false,
            ..SubgradConfig::default()
        };
        let report = decode_subgradient(&h, &llr, &cfg).unwrap();
        let lp = lp_oracle(&h, &llr).unwrap();
        assert!(report.objective <= lp.value + 1e-9);
        assert!(lp.value - report.objective <= 0.01 * lp.value.abs().max(1.0));
    }
}
