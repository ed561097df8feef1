//! The dual of the LP decoder.
//!
//! The dual variables are one real `u'_{i,j}` per Tanner-graph edge. The
//! check-side variable is coupled as `v'_{j,i} = -u'_{i,j}` and the channel
//! coordinate of every variable node is pinned to `u'_{i,0} = -λ_i`, so the
//! state is just a vector indexed by edge id.
//!
//! Local codes: variable node `i` carries the repetition code `A_i` of length
//! `|J_i| + 1` (all-zeros or all-ones), check node `j` the even-weight code
//! `B_j` of length `|I_j|`. Energies are `⟨-u'_i, a_i⟩` and `⟨-v'_j, b_j⟩`;
//! the all-ones energy at variable `i` is `λ_i - Σ_j u'_{i,j}` and setting
//! position `k` of a check word to one costs `u'_{k,j}`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::channel::LlrVector;
use crate::code::{EdgeId, ParityCheckMatrix};
use crate::error::DecodeError;
use crate::softmin::{ParityTrellis, Temperature};

/// Default tie tolerance of the `{0,?,1}` decision.
pub const DEFAULT_DECISION_TOLERANCE: f64 = 1e-8;
/// Relative margin a local argmin needs to count as unique.
pub const CERTIFICATE_MARGIN: f64 = 1e-8;
/// Allowed disagreement between a certificate and the hard dual objective.
pub const CERTIFICATE_DUAL_TOLERANCE: f64 = 1e-6;

/// Dual variables for one decoding problem.
#[derive(Debug, Clone)]
pub struct DualState<'a> {
    code: &'a ParityCheckMatrix,
    llr: &'a LlrVector,
    edges: Vec<f64>,
}

/// Extrinsic message differences for one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MessagePair {
    /// `S'_{i,0} - S'_{i,1}`.
    pub s_diff: f64,
    /// `T'_{j,0} - T'_{j,1}`.
    pub t_diff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualObjective {
    pub total: f64,
    pub phi: Vec<f64>,
    pub theta: Vec<f64>,
    pub temperature: Temperature,
}

impl<'a> DualState<'a> {
    /// All-zero state.
    pub fn new(code: &'a ParityCheckMatrix, llr: &'a LlrVector) -> Result<Self, DecodeError> {
        Self::with_values(code, llr, vec![0.0; code.num_edges()])
    }

    pub fn with_values(
        code: &'a ParityCheckMatrix,
        llr: &'a LlrVector,
        edges: Vec<f64>,
    ) -> Result<Self, DecodeError> {
        if llr.len() != code.n() {
            return Err(DecodeError::LengthMismatch {
                expected: code.n(),
                found: llr.len(),
            });
        }
        if edges.len() != code.num_edges() {
            return Err(DecodeError::ShapeMismatch("one value per edge"));
        }
        Ok(Self { code, llr, edges })
    }

    pub fn code(&self) -> &'a ParityCheckMatrix {
        self.code
    }

    pub fn llr(&self) -> &'a LlrVector {
        self.llr
    }

    pub fn values(&self) -> &[f64] {
        &self.edges
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.edges
    }

    pub fn value(&self, e: EdgeId) -> f64 {
        self.edges[e]
    }

    pub fn set_value(&mut self, e: EdgeId, v: f64) {
        self.edges[e] = v;
    }

    pub fn edge_id(&self, i: usize, j: usize) -> Result<EdgeId, DecodeError> {
        self.code
            .edge_id(i, j)
            .ok_or(DecodeError::EdgeNotPresent { var: i, check: j })
    }

    /// Energy of the all-ones word at variable `i`: `λ_i - Σ_j u'_{i,j}`.
    pub fn ones_energy(&self, i: usize) -> f64 {
        self.llr[i] - self.code.var_edges(i).iter().map(|&e| self.edges[e]).sum::<f64>()
    }

    /// `S'_{i,0} - S'_{i,1} = λ_i - Σ_{j' ≠ j} u'_{i,j'}`; independent of κ.
    pub fn variable_message(&self, i: usize, j: usize) -> Result<f64, DecodeError> {
        Ok(self.edge_variable_message(self.edge_id(i, j)?))
    }

    pub fn edge_variable_message(&self, e: EdgeId) -> f64 {
        let (i, _) = self.code.edge(e);
        self.llr[i]
            - self
                .code
                .var_edges(i)
                .iter()
                .filter(|&&f| f != e)
                .map(|&f| self.edges[f])
                .sum::<f64>()
    }

    /// Soft-min energies of even/odd words of `B_j` restricted to `I_j \ {i}`.
    ///
    /// `-even` is `T'_{j,0}` and `-odd` is `T'_{j,1}`.
    pub fn edge_check_partials(&self, e: EdgeId, t: Temperature) -> ParityTrellis {
        let (_, j) = self.code.edge(e);
        ParityTrellis::over(
            self.code.check_edges(j).filter(|&f| f != e).map(|f| self.edges[f]),
            t,
        )
    }

    /// `T'_{j,0} - T'_{j,1}` by a forward pass over the parity trellis.
    pub fn check_message(&self, j: usize, i: usize, t: Temperature) -> Result<f64, DecodeError> {
        let e = self.edge_id(i, j)?;
        let degree = self.code.check_degree(j);
        if degree < 2 {
            return Err(DecodeError::DegenerateCheck { check: j, degree });
        }
        Ok(self.edge_check_partials(e, t).diff())
    }

    pub fn message_pair(&self, e: EdgeId, t: Temperature) -> MessagePair {
        MessagePair {
            s_diff: self.edge_variable_message(e),
            t_diff: self.edge_check_partials(e, t).diff(),
        }
    }

    /// The part of the dual objective that depends on edge `e`, as a function
    /// of that edge's value `u` with every other edge held fixed.
    pub fn edge_objective(&self, e: EdgeId, u: f64, t: Temperature) -> f64 {
        let s = self.edge_variable_message(e);
        let partial = self.edge_check_partials(e, t);
        edge_objective_from(s, partial, u, t)
    }

    /// Check-node term `θ'_j`: soft-min energy over all of `B_j`.
    pub fn check_energy(&self, j: usize, t: Temperature) -> f64 {
        ParityTrellis::over(self.code.check_edges(j).map(|e| self.edges[e]), t).even
    }

    /// Variable-node term `φ'_i`.
    pub fn var_energy(&self, i: usize, t: Temperature) -> f64 {
        t.min2(0.0, self.ones_energy(i))
    }

    /// Dual objective with every `φ'_i`, `θ'_j` at its tight value.
    pub fn dual_objective(&self, t: Temperature) -> DualObjective {
        let phi: Vec<f64> = (0..self.code.n()).map(|i| self.var_energy(i, t)).collect();
        let theta: Vec<f64> = (0..self.code.m()).map(|j| self.check_energy(j, t)).collect();
        let total = phi.iter().sum::<f64>() + theta.iter().sum::<f64>();
        DualObjective {
            total,
            phi,
            theta,
            temperature: t,
        }
    }

    /// Total dual objective without the per-node breakdown.
    pub fn objective_value(&self, t: Temperature) -> f64 {
        (0..self.code.n()).map(|i| self.var_energy(i, t)).sum::<f64>()
            + (0..self.code.m()).map(|j| self.check_energy(j, t)).sum::<f64>()
    }

    /// Ternary decision: compare the all-zeros and all-ones energies of `A_i`.
    pub fn decide(&self, tolerance: f64) -> TernaryDecision {
        let values = (0..self.code.n())
            .map(|i| {
                let ones = self.ones_energy(i);
                if ones > tolerance {
                    Ternary::Zero
                } else if ones < -tolerance {
                    Ternary::One
                } else {
                    Ternary::Erased
                }
            })
            .collect();
        TernaryDecision { values, tolerance }
    }

    /// Tries to build an LP-optimality certificate from the hard local argmins.
    ///
    /// Succeeds only if every node's argmin is unique and the resulting local
    /// words agree on every edge.
    pub fn certify(&self) -> Option<Certificate> {
        let code = self.code;
        let mut x = vec![0u8; code.n()];
        for (i, bit) in x.iter_mut().enumerate() {
            let ones = self.ones_energy(i);
            let best = ones.min(0.0);
            if ones.abs() <= CERTIFICATE_MARGIN * (1.0 + best.abs()) {
                return None;
            }
            *bit = u8::from(ones < 0.0);
        }
        let mut check_words = Vec::with_capacity(code.m());
        for j in 0..code.m() {
            let costs: Vec<f64> = code.check_edges(j).map(|e| self.edges[e]).collect();
            let best = hard_parity_argmin(&costs);
            if best.second - best.energy <= CERTIFICATE_MARGIN * (1.0 + best.energy.abs()) {
                return None;
            }
            if code.check_vars(j).iter().zip(&best.word).any(|(&i, &b)| x[i] != b) {
                return None;
            }
            check_words.push(best.word);
        }
        let value = self.llr.cost(&x);
        let dual_value = self.objective_value(Temperature::Hard);
        if (value - dual_value).abs() > CERTIFICATE_DUAL_TOLERANCE * (1.0 + value.abs()) {
            return None;
        }
        Some(Certificate {
            x,
            check_words,
            value,
            dual_value,
        })
    }

    /// `g'_{a,b}(u') = Σ_i ⟨-u'_i, a_i⟩ + Σ_j ⟨u'_j, b_j⟩`.
    ///
    /// `var_bits[i]` selects the all-zeros or all-ones word of `A_i`;
    /// `check_words[j]` is a word of `B_j` in the order of `I_j`.
    pub fn g_ab_value(&self, var_bits: &[u8], check_words: &[Vec<u8>]) -> Result<f64, DecodeError> {
        let code = self.code;
        if var_bits.len() != code.n() || check_words.len() != code.m() {
            return Err(DecodeError::ShapeMismatch("one local word per node"));
        }
        let mut total = 0.0;
        for (i, &a) in var_bits.iter().enumerate() {
            if a > 1 {
                return Err(DecodeError::ShapeMismatch("repetition words are 0 or 1"));
            }
            if a == 1 {
                total += self.ones_energy(i);
            }
        }
        for (j, b) in check_words.iter().enumerate() {
            if b.len() != code.check_degree(j) {
                return Err(DecodeError::ShapeMismatch("check word length"));
            }
            if b.iter().any(|&v| v > 1) || b.iter().filter(|&&v| v == 1).count() % 2 == 1 {
                return Err(DecodeError::ShapeMismatch("check words must have even weight"));
            }
            total += code
                .check_edges(j)
                .zip(b)
                .filter(|(_, &bit)| bit == 1)
                .map(|(e, _)| self.edges[e])
                .sum::<f64>();
        }
        Ok(total)
    }

    /// Gibbs distributions `α_i ∝ exp(-κ⟨-u'_i, a⟩)`, `β_j ∝ exp(-κ⟨-v'_j, b⟩)`.
    pub fn gibbs_marginals(&self, t: Temperature) -> Result<GibbsMarginals, DecodeError> {
        let kappa = t.kappa().ok_or(DecodeError::NeedsFiniteTemperature)?;
        let code = self.code;
        let mut var_one = Vec::with_capacity(code.n());
        let mut var_entropy = Vec::with_capacity(code.n());
        for i in 0..code.n() {
            let p = logistic(-kappa * self.ones_energy(i));
            var_one.push(p);
            var_entropy.push(binary_entropy(p));
        }

        let mut check_free_energy = Vec::with_capacity(code.m());
        let mut check_entropy = Vec::with_capacity(code.m());
        let mut check_edge_mean = vec![0.0; code.num_edges()];
        let mut prefix = Vec::new();
        for j in 0..code.m() {
            let costs: Vec<f64> = code.check_edges(j).map(|e| self.edges[e]).collect();
            prefix.clear();
            let mut acc = ParityTrellis::EMPTY;
            for &c in &costs {
                prefix.push(acc);
                acc = acc.push(c, t);
            }
            let free = acc.even;
            let mut suffix = ParityTrellis::EMPTY;
            let mut mean_cost = 0.0;
            for (k, e) in code.check_edges(j).enumerate().rev() {
                let others = prefix[k].join(suffix, t);
                let p = libm::exp(-kappa * (costs[k] + others.odd - free)).clamp(0.0, 1.0);
                check_edge_mean[e] = p;
                mean_cost += costs[k] * p;
                suffix = suffix.push(costs[k], t);
            }
            check_free_energy.push(free);
            check_entropy.push((kappa * (mean_cost - free)).max(0.0));
        }

        Ok(GibbsMarginals {
            kappa,
            var_one,
            var_entropy,
            check_free_energy,
            check_entropy,
            check_edge_mean,
            costs: self.edges.clone(),
            edge_var: (0..code.num_edges()).map(|e| code.edge(e).0).collect(),
        })
    }

    /// Primal value of the induced Gibbs marginals and its gap to the soft dual.
    pub fn entropic_gap(&self, t: Temperature) -> Result<EntropicGap, DecodeError> {
        let g = self.gibbs_marginals(t)?;
        let kappa = g.kappa;
        let linear: f64 = self.llr.iter().zip(&g.var_one).map(|(l, p)| l * p).sum();
        let entropy: f64 = g.var_entropy.iter().sum::<f64>() + g.check_entropy.iter().sum::<f64>();
        let primal_value = linear - entropy / kappa;
        let dual_value = self.objective_value(t);
        let max_mismatch = (0..self.code.num_edges())
            .map(|e| (g.var_edge_mean(e) - g.check_edge_mean(e)).abs())
            .fold(0.0, f64::max);
        Ok(EntropicGap {
            primal_value,
            dual_value,
            gap: primal_value - dual_value,
            max_mismatch,
        })
    }
}

pub(crate) fn edge_objective_from(s_diff: f64, partial: ParityTrellis, u: f64, t: Temperature) -> f64 {
    t.min2(0.0, s_diff - u) + t.min2(partial.even, partial.odd + u)
}

/// Hard minimizer of `Σ c_k b_k` over even-weight `b`, with the runner-up energy.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityArgmin {
    pub word: Vec<u8>,
    pub energy: f64,
    /// Energy of the best even word different from `word` (`∞` if none).
    pub second: f64,
}

pub fn hard_parity_argmin(costs: &[f64]) -> ParityArgmin {
    let mut word: Vec<u8> = costs.iter().map(|&c| u8::from(c < 0.0)).collect();
    let base: f64 = costs.iter().filter(|&&c| c < 0.0).sum();
    let (mut m1, mut m2, mut at) = (f64::INFINITY, f64::INFINITY, 0);
    for (k, c) in costs.iter().enumerate() {
        let a = c.abs();
        if a < m1 {
            m2 = m1;
            m1 = a;
            at = k;
        } else if a < m2 {
            m2 = a;
        }
    }
    let odd = word.iter().filter(|&&b| b == 1).count() % 2 == 1;
    if odd {
        word[at] ^= 1;
        ParityArgmin {
            word,
            energy: base + m1,
            second: base + m2,
        }
    } else {
        ParityArgmin {
            word,
            energy: base,
            second: base + m1 + m2,
        }
    }
}

#[inline]
fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}

fn binary_entropy(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * libm::log(q) } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// One position of a ternary decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ternary {
    Zero,
    Erased,
    One,
}

impl Ternary {
    pub fn as_char(self) -> char {
        match self {
            Self::Zero => '0',
            Self::Erased => '?',
            Self::One => '1',
        }
    }
}

/// Decision in `{0, ?, 1}^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TernaryDecision {
    pub values: Vec<Ternary>,
    pub tolerance: f64,
}

impl TernaryDecision {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn erasures(&self) -> usize {
        self.values.iter().filter(|&&v| v == Ternary::Erased).count()
    }

    /// The binary word, if no position is erased.
    pub fn to_word(&self) -> Option<Vec<u8>> {
        self.values
            .iter()
            .map(|v| match v {
                Ternary::Zero => Some(0),
                Ternary::One => Some(1),
                Ternary::Erased => None,
            })
            .collect()
    }

    /// Positions that are `?` or `1`.
    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != Ternary::Zero)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn erased_positions(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == Ternary::Erased)
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for TernaryDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.values.iter().try_for_each(|v| write!(f, "{}", v.as_char()))
    }
}

/// A consistent pair of hard local argmins, proving that `x` is an optimal
/// solution of the LP (and hence the ML codeword).
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// The certified codeword; `x_i = a_{i,0}`.
    pub x: Vec<u8>,
    /// Argmin word of every check, in the order of `I_j`.
    pub check_words: Vec<Vec<u8>>,
    /// `⟨λ, x⟩`.
    pub value: f64,
    /// Hard dual objective at the certifying state.
    pub dual_value: f64,
}

/// Local Gibbs distributions at a finite inverse temperature.
///
/// The check-node distributions are kept implicitly (free energy plus edge
/// marginals); [`beta_probability`](Self::beta_probability) evaluates any
/// single word.
#[derive(Debug, Clone)]
pub struct GibbsMarginals {
    pub kappa: f64,
    /// `α_i(all-ones)`.
    pub var_one: Vec<f64>,
    /// `H(α_i)` in nats.
    pub var_entropy: Vec<f64>,
    /// `θ'_j` at this temperature.
    pub check_free_energy: Vec<f64>,
    /// `H(β_j)` in nats.
    pub check_entropy: Vec<f64>,
    check_edge_mean: Vec<f64>,
    costs: Vec<f64>,
    edge_var: Vec<usize>,
}

impl GibbsMarginals {
    /// `(α_i(0), α_i(1))`.
    pub fn alpha(&self, i: usize) -> [f64; 2] {
        [1.0 - self.var_one[i], self.var_one[i]]
    }

    /// `E_α[a_{i,j}]` for edge `e = (i, j)`.
    pub fn var_edge_mean(&self, e: EdgeId) -> f64 {
        self.var_one[self.edge_var[e]]
    }

    /// `E_β[b_{j,i}]` for edge `e = (i, j)`.
    pub fn check_edge_mean(&self, e: EdgeId) -> f64 {
        self.check_edge_mean[e]
    }

    /// `β_j(word)` for a word in the order of `I_j`; zero for odd words.
    pub fn beta_probability(&self, code: &ParityCheckMatrix, j: usize, word: &[u8]) -> f64 {
        if word.iter().filter(|&&b| b == 1).count() % 2 == 1 {
            return 0.0;
        }
        let energy: f64 = code
            .check_edges(j)
            .zip(word)
            .filter(|(_, &b)| b == 1)
            .map(|(e, _)| self.costs[e])
            .sum();
        libm::exp(-self.kappa * (energy - self.check_free_energy[j]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropicGap {
    pub primal_value: f64,
    pub dual_value: f64,
    /// `primal_value - dual_value`.
    pub gap: f64,
    /// Largest `|E_α[a_{i,j}] - E_β[b_{j,i}]|` over edges.
    pub max_mismatch: f64,
}
