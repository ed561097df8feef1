//! Desk-scale ground truth.
//!
//! Everything here works by exhaustive enumeration and is deliberately kept
//! independent of the trellis arithmetic used by the decoders.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::channel::LlrVector;
use crate::code::{EdgeId, ParityCheckMatrix};
use crate::dual::DualState;
use crate::error::OracleError;
use crate::softmin::{softmin, Temperature};

mod lp;
mod toy;

pub use lp::{
    enumerate_vertices, relaxation_inequalities, lp_oracle, Inequality, LpSolution, ENUMERATION_MAX_BASES,
    LP_MAX_CONSTRAINTS, LP_MAX_N,
};
pub use toy::{toy_a5, toy_a5_ascent, ToyIterate};

/// Largest code dimension [`brute_force_ml`] will enumerate.
pub const ML_MAX_DIMENSION: usize = 24;
/// Largest local code length [`enumerate_local`] will enumerate.
pub const LOCAL_MAX_DEGREE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalKind {
    /// `A_i`: the all-zeros and all-ones words.
    Repetition,
    /// `B_j`: all even-weight words.
    EvenWeight,
}

/// All words of a local code, optionally with one 0-based position pinned.
///
/// Words come out in counting order with position 0 as the least
/// significant bit.
pub fn enumerate_local(
    kind: LocalKind,
    degree: usize,
    pin: Option<(usize, u8)>,
) -> Result<Vec<Vec<u8>>, OracleError> {
    if degree > LOCAL_MAX_DEGREE {
        return Err(OracleError::DegreeTooLarge(degree));
    }
    let keep = |w: &Vec<u8>| pin.is_none_or(|(p, b)| w.get(p) == Some(&b));
    let words: Vec<Vec<u8>> = match kind {
        LocalKind::Repetition => [0u8, 1]
            .iter()
            .map(|&b| alloc::vec![b; degree])
            .filter(keep)
            .collect(),
        LocalKind::EvenWeight => (0u32..1 << degree)
            .filter(|v| v.count_ones() % 2 == 0)
            .map(|v| (0..degree).map(|k| ((v >> k) & 1) as u8).collect())
            .filter(keep)
            .collect(),
    };
    Ok(words)
}

/// Colexicographic order: the last differing coordinate decides.
pub fn colex_cmp<T: PartialOrd>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    Ordering::Equal
}

/// Maximum-likelihood codeword by enumerating all `2^k` codewords.
///
/// Ties are broken towards the colexicographically smallest word.
pub fn brute_force_ml(h: &ParityCheckMatrix, llr: &LlrVector) -> Result<(Vec<u8>, f64), OracleError> {
    let basis = h.codeword_basis();
    let k = basis.len();
    if k > ML_MAX_DIMENSION {
        return Err(OracleError::DimensionTooLarge {
            k,
            limit: ML_MAX_DIMENSION,
        });
    }
    let n = h.n();
    let mut word = alloc::vec![0u8; n];
    let mut best = word.clone();
    let mut best_value = 0.0_f64;
    let mut running = 0.0;
    // Gray-code walk: step s flips basis vector trailing_zeros(s).
    for step in 1u64..(1u64 << k) {
        let flip = &basis[step.trailing_zeros() as usize];
        for (i, (w, &f)) in word.iter_mut().zip(flip).enumerate() {
            if f == 1 {
                running += if *w == 0 { llr[i] } else { -llr[i] };
                *w ^= 1;
            }
        }
        let tol = 1e-9 * (1.0 + best_value.abs());
        if running < best_value + tol {
            // Recompute exactly to avoid drift from the running sum.
            let exact = llr.cost(&word);
            let tie = (exact - best_value).abs() <= 1e-12 * (1.0 + best_value.abs());
            if exact < best_value && !tie || tie && colex_cmp(&word, &best) == Ordering::Less {
                best.copy_from_slice(&word);
                best_value = exact;
            }
            running = exact;
        }
    }
    Ok((best, best_value))
}

/// Grid maximizers of the single-edge objective `h'(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridArgmax {
    /// Grid points within `1e-12` of the maximum, ascending.
    pub points: Vec<f64>,
    pub max: f64,
}

impl GridArgmax {
    pub fn lo(&self) -> f64 {
        self.points[0]
    }

    pub fn hi(&self) -> f64 {
        *self.points.last().unwrap()
    }
}

/// The single-edge objective `h'` as two pairs of restricted soft-min
/// energies, obtained by enumerating `A_i` and `B_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeEnergies {
    /// Restricted soft-min over `A_i` with `a_{i,j} = 0` and `= 1`,
    /// excluding the edge's own term.
    pub var: [f64; 2],
    /// Same over `B_j` with `b_{j,i} = 0` and `= 1`.
    pub check: [f64; 2],
    pub temperature: Temperature,
}

impl EdgeEnergies {
    pub fn of(state: &DualState<'_>, e: EdgeId, t: Temperature) -> Self {
        let code = state.code();
        let (i, j) = code.edge(e);
        let values = state.values();

        // A_i positions: 0 is the channel, then the edges of i in order.
        let var_edges = code.var_edges(i);
        let var_pos = 1 + var_edges.iter().position(|&f| f == e).unwrap();
        let var = [0u8, 1].map(|bit| {
            let energies: Vec<f64> = enumerate_local(LocalKind::Repetition, var_edges.len() + 1, Some((var_pos, bit)))
                .unwrap()
                .iter()
                .map(|a| {
                    let mut energy = state.llr()[i] * f64::from(a[0]);
                    for (p, &f) in var_edges.iter().enumerate() {
                        if f != e {
                            energy -= values[f] * f64::from(a[p + 1]);
                        }
                    }
                    energy
                })
                .collect();
            softmin(&energies, t).unwrap()
        });

        let check_pos = code.position_in_check(e);
        let degree = code.check_degree(j);
        let check = [0u8, 1].map(|bit| {
            let energies: Vec<f64> = enumerate_local(LocalKind::EvenWeight, degree, Some((check_pos, bit)))
                .unwrap()
                .iter()
                .map(|b| {
                    code.check_edges(j)
                        .zip(b)
                        .filter(|&(f, &bk)| f != e && bk == 1)
                        .map(|(f, _)| values[f])
                        .sum()
                })
                .collect();
            softmin(&energies, t).unwrap()
        });
        Self { var, check, temperature: t }
    }

    /// `h'(u)` with the edge set to `u` (the coupled check value is `-u`).
    pub fn h(&self, u: f64) -> f64 {
        let t = self.temperature;
        softmin(&[self.var[0], self.var[1] - u], t).unwrap() + softmin(&[self.check[0], self.check[1] + u], t).unwrap()
    }
}

/// Evaluates `h'` on the grid `lo, lo + step, ..., hi` by direct enumeration
/// and returns every maximizer within `1e-12` of the maximum.
pub fn grid_argmax_h(
    state: &DualState<'_>,
    e: EdgeId,
    t: Temperature,
    lo: f64,
    hi: f64,
    step: f64,
) -> Result<GridArgmax, OracleError> {
    if !(lo < hi && step > 0.0) {
        return Err(OracleError::InvalidGrid);
    }
    let energies = EdgeEnergies::of(state, e, t);
    let count = libm::round((hi - lo) / step) as usize + 1;
    let values: Vec<(f64, f64)> = (0..count)
        .map(|k| {
            let u = lo + step * k as f64;
            (u, energies.h(u))
        })
        .collect();
    let max = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let points = values
        .iter()
        .filter(|v| v.1 >= max - 1e-12)
        .map(|v| v.0)
        .collect();
    Ok(GridArgmax { points, max })
}
