//! Exact LP decoding for tiny codes.
//!
//! The fundamental polytope is described by the box `0 ≤ x ≤ 1` and, for
//! every check `j` and odd-size `S ⊆ I_j`, the inequality
//! `Σ_{S} x_i - Σ_{I_j \ S} x_i ≤ |S| - 1`. Every right-hand side is
//! nonnegative, so the origin is a feasible starting vertex.
//!
//! [`lp_oracle`] runs a dictionary simplex with Bland's rule and checks the
//! result against an explicit dual feasible point, so the reported value is
//! proven optimal up to floating-point tolerance. The optimal face is then
//! explored to decide uniqueness and to return its colexicographically
//! smallest point. [`enumerate_vertices`] lists every vertex by brute force
//! and serves as an independent check on very small instances.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::channel::LlrVector;
use crate::code::ParityCheckMatrix;
use crate::error::OracleError;

pub const LP_MAX_N: usize = 10;
pub const LP_MAX_CONSTRAINTS: usize = 2000;
/// Largest number of constraint subsets [`enumerate_vertices`] will try.
pub const ENUMERATION_MAX_BASES: u64 = 20_000_000;

const PIVOT_TOL: f64 = 1e-9;
const FEASIBILITY_TOL: f64 = 1e-9;
const REDUCED_COST_TOL: f64 = 1e-10;
/// Spread of a coordinate over the optimal face below which the optimum
/// counts as unique.
const FACE_TOL: f64 = 1e-7;

/// `coeffs · x ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

impl Inequality {
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.rhs - self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()
    }
}

/// Box constraints first, then the odd-set inequalities check by check.
pub fn relaxation_inequalities(h: &ParityCheckMatrix) -> Vec<Inequality> {
    let n = h.n();
    let mut out = Vec::new();
    for i in 0..n {
        let mut lower = vec![0.0; n];
        lower[i] = -1.0;
        out.push(Inequality { coeffs: lower, rhs: 0.0 });
        let mut upper = vec![0.0; n];
        upper[i] = 1.0;
        out.push(Inequality { coeffs: upper, rhs: 1.0 });
    }
    out.extend(odd_set_inequalities(h));
    out
}

fn odd_set_inequalities(h: &ParityCheckMatrix) -> Vec<Inequality> {
    let n = h.n();
    let mut out = Vec::new();
    for j in 0..h.m() {
        let vars = h.check_vars(j);
        for mask in 0u32..1 << vars.len() {
            if mask.count_ones() % 2 == 0 {
                continue;
            }
            let mut coeffs = vec![0.0; n];
            for (k, &i) in vars.iter().enumerate() {
                coeffs[i] = if mask >> k & 1 == 1 { 1.0 } else { -1.0 };
            }
            out.push(Inequality {
                coeffs,
                rhs: f64::from(mask.count_ones()) - 1.0,
            });
        }
    }
    out
}

fn constraint_count(h: &ParityCheckMatrix) -> usize {
    2 * h.n() + (0..h.m()).map(|j| 1usize << (h.check_degree(j) - 1)).sum::<usize>()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    /// The colexicographically smallest optimal point.
    pub x: Vec<f64>,
    /// `⟨λ, x⟩`.
    pub value: f64,
    pub is_integral: bool,
    /// Positions with `x_i > 0`.
    pub support: Vec<usize>,
    /// No other point of the polytope attains `value`.
    pub unique: bool,
    /// Largest spread `max x_i - min x_i` of a coordinate over the optimal face.
    pub face_width: f64,
    /// Lower bound on the LP value from a verified dual feasible point.
    pub dual_bound: f64,
}

impl LpSolution {
    /// Positions with `0 < x_i < 1`.
    pub fn fractional_positions(&self) -> Vec<usize> {
        self.x
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 1e-7 && v < 1.0 - 1e-7)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Simplex dictionary `x_B = b - A_N x_N` over the variables `0..n`
/// (original) and `n..n+R` (slacks of the rows).
#[derive(Clone)]
struct Dictionary {
    n: usize,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    rhs: Vec<f64>,
    rows: Vec<Vec<f64>>,
    frozen: Vec<bool>,
}

/// Objective `z = z0 + Σ_k c_k x_{N[k]}`, minimized.
struct Objective {
    z0: f64,
    c: Vec<f64>,
}

impl Dictionary {
    fn new(n: usize, constraints: &[Inequality]) -> Self {
        let r = constraints.len();
        Self {
            n,
            basic: (n..n + r).collect(),
            nonbasic: (0..n).collect(),
            rhs: constraints.iter().map(|c| c.rhs).collect(),
            rows: constraints.iter().map(|c| c.coeffs.clone()).collect(),
            frozen: vec![false; n + r],
        }
    }

    /// Expresses `Σ w_i x_i` over the original variables in nonbasic terms.
    fn objective(&self, w: &[f64]) -> Objective {
        let mut c: Vec<f64> = self
            .nonbasic
            .iter()
            .map(|&v| if v < self.n { w[v] } else { 0.0 })
            .collect();
        let mut z0 = 0.0;
        for (r, &v) in self.basic.iter().enumerate() {
            if v < self.n && w[v] != 0.0 {
                z0 += w[v] * self.rhs[r];
                for (ck, a) in c.iter_mut().zip(&self.rows[r]) {
                    *ck -= w[v] * a;
                }
            }
        }
        Objective { z0, c }
    }

    fn pivot(&mut self, r: usize, k: usize, obj: &mut Objective) {
        let a = self.rows[r][k];
        let mut pivot_row = core::mem::take(&mut self.rows[r]);
        pivot_row.iter_mut().for_each(|v| *v /= a);
        pivot_row[k] = 1.0 / a;
        let pivot_rhs = self.rhs[r] / a;
        for (s, row) in self.rows.iter_mut().enumerate() {
            if s == r {
                continue;
            }
            let f = row[k];
            if f != 0.0 {
                row[k] = 0.0;
                row.iter_mut().zip(&pivot_row).for_each(|(v, p)| *v -= f * p);
                self.rhs[s] -= f * pivot_rhs;
                if self.rhs[s] < 0.0 && self.rhs[s] > -FEASIBILITY_TOL {
                    self.rhs[s] = 0.0;
                }
            }
        }
        let f = obj.c[k];
        obj.c[k] = 0.0;
        obj.c.iter_mut().zip(&pivot_row).for_each(|(v, p)| *v -= f * p);
        obj.z0 += f * pivot_rhs;
        self.rows[r] = pivot_row;
        self.rhs[r] = pivot_rhs;
        core::mem::swap(&mut self.basic[r], &mut self.nonbasic[k]);
    }

    /// Primal simplex with Bland's rule; frozen variables never enter.
    fn minimize(&mut self, obj: &mut Objective) -> Result<(), OracleError> {
        loop {
            let entering = (0..self.nonbasic.len())
                .filter(|&k| obj.c[k] < -REDUCED_COST_TOL && !self.frozen[self.nonbasic[k]])
                .min_by_key(|&k| self.nonbasic[k]);
            let Some(k) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, f64)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][k];
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs[r].max(0.0) / a;
                leaving = match leaving {
                    None => Some((r, ratio)),
                    Some((best, q)) => {
                        let tie = (ratio - q).abs() <= 1e-12 * (1.0 + q);
                        if ratio < q && !tie || tie && self.basic[r] < self.basic[best] {
                            Some((r, ratio))
                        } else {
                            Some((best, q))
                        }
                    }
                };
            }
            let (r, _) = leaving.ok_or(OracleError::Unverified("unbounded direction in a bounded polytope"))?;
            self.pivot(r, k, obj);
        }
    }

    /// Freezes every nonbasic variable with a positive reduced cost, which
    /// restricts later runs to the optimal face of `obj`.
    fn freeze_face(&mut self, obj: &Objective) {
        for (k, &v) in self.nonbasic.iter().enumerate() {
            if obj.c[k] > REDUCED_COST_TOL {
                self.frozen[v] = true;
            }
        }
    }

    fn point(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        for (r, &v) in self.basic.iter().enumerate() {
            if v < self.n {
                x[v] = self.rhs[r];
            }
        }
        x
    }

    /// Row multipliers read off the final reduced costs.
    fn row_multipliers(&self, obj: &Objective, rows: usize) -> Vec<f64> {
        let mut y = vec![0.0; rows];
        for (k, &v) in self.nonbasic.iter().enumerate() {
            if v >= self.n {
                y[v - self.n] = obj.c[k].max(0.0);
            }
        }
        y
    }
}

/// `Σ_i min(0, (λ + Aᵀy)_i) - b·y`, a lower bound on `⟨λ, x⟩` over the
/// polytope `{0 ≤ x ≤ 1, Ax ≤ b}` for any `y ≥ 0`.
fn dual_lower_bound(llr: &[f64], constraints: &[Inequality], y: &[f64]) -> f64 {
    let mut g = llr.to_vec();
    let mut by = 0.0;
    for (c, &yr) in constraints.iter().zip(y) {
        if yr > 0.0 {
            by += yr * c.rhs;
            g.iter_mut().zip(&c.coeffs).for_each(|(gi, a)| *gi += yr * a);
        }
    }
    g.iter().map(|v| v.min(0.0)).sum::<f64>() - by
}

/// Exact LP optimum over the fundamental polytope.
///
/// Ties between optimal points go to the colexicographically smallest.
pub fn lp_oracle(h: &ParityCheckMatrix, llr: &LlrVector) -> Result<LpSolution, OracleError> {
    let n = h.n();
    let count = constraint_count(h);
    if n > LP_MAX_N || count > LP_MAX_CONSTRAINTS {
        return Err(OracleError::InstanceTooLarge { n, constraints: count });
    }
    if llr.len() != n {
        return Err(OracleError::Unverified("llr length differs from the code length"));
    }
    // Rows: upper bounds, then odd-set inequalities. Lower bounds are the
    // nonnegativity of the simplex variables.
    let mut rows: Vec<Inequality> = (0..n)
        .map(|i| {
            let mut coeffs = vec![0.0; n];
            coeffs[i] = 1.0;
            Inequality { coeffs, rhs: 1.0 }
        })
        .collect();
    rows.extend(odd_set_inequalities(h));

    let mut dict = Dictionary::new(n, &rows);
    let mut obj = dict.objective(llr);
    dict.minimize(&mut obj)?;
    let value_simplex = obj.z0;
    let y = dict.row_multipliers(&obj, rows.len());
    let dual_bound = dual_lower_bound(llr, &rows, &y);
    if (value_simplex - dual_bound).abs() > 1e-8 * (1.0 + value_simplex.abs()) {
        return Err(OracleError::Unverified("primal and dual values disagree"));
    }
    dict.freeze_face(&obj);

    let mut face_width: f64 = 0.0;
    for i in 0..n {
        let mut lo = 0.0;
        for sign in [1.0, -1.0] {
            let mut probe = dict.clone();
            let mut w = vec![0.0; n];
            w[i] = sign;
            let mut o = probe.objective(&w);
            probe.minimize(&mut o)?;
            if sign > 0.0 {
                lo = o.z0;
            } else {
                face_width = face_width.max(-o.z0 - lo);
            }
        }
    }

    // Colexicographic minimum: settle the last coordinate first.
    for i in (0..n).rev() {
        let mut w = vec![0.0; n];
        w[i] = 1.0;
        let mut o = dict.objective(&w);
        dict.minimize(&mut o)?;
        dict.freeze_face(&o);
    }

    let x: Vec<f64> = dict
        .point()
        .into_iter()
        .map(|v| {
            if v.abs() < 1e-12 {
                0.0
            } else if (v - 1.0).abs() < 1e-12 {
                1.0
            } else {
                v
            }
        })
        .collect();
    let all = relaxation_inequalities(h);
    if all.iter().any(|c| c.slack(&x) < -FEASIBILITY_TOL) {
        return Err(OracleError::Unverified("optimal point violates a constraint"));
    }
    let value: f64 = x.iter().zip(llr.iter()).map(|(a, b)| a * b).sum();
    if (value - dual_bound).abs() > 1e-8 * (1.0 + value.abs()) {
        return Err(OracleError::Unverified("tie-broken point is not optimal"));
    }
    let is_integral = x.iter().all(|&v| v.abs() < 1e-7 || (v - 1.0).abs() < 1e-7);
    let support = x
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 1e-7)
        .map(|(i, _)| i)
        .collect();
    Ok(LpSolution {
        x,
        value,
        is_integral,
        support,
        unique: face_width <= FACE_TOL,
        face_width,
        dual_bound,
    })
}

/// Incremental row-reduced echelon form of chosen tight constraints.
#[derive(Clone)]
struct Basis {
    // Each row is n coefficients followed by the right-hand side.
    rows: Vec<Vec<f64>>,
    pivots: Vec<usize>,
}

impl Basis {
    fn with_row(&self, coeffs: &[f64], rhs: f64) -> Option<Self> {
        let n = coeffs.len();
        let mut row: Vec<f64> = coeffs.iter().copied().chain(core::iter::once(rhs)).collect();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let f = row[p];
            if f != 0.0 {
                row.iter_mut().zip(r).for_each(|(a, b)| *a -= f * b);
            }
        }
        let (pivot, mag) = row[..n]
            .iter()
            .enumerate()
            .map(|(c, v)| (c, v.abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if mag < PIVOT_TOL {
            return None;
        }
        let scale = row[pivot];
        row.iter_mut().for_each(|v| *v /= scale);
        let mut next = self.clone();
        for r in &mut next.rows {
            let f = r[pivot];
            if f != 0.0 {
                r.iter_mut().zip(&row).for_each(|(a, b)| *a -= f * b);
            }
        }
        next.rows.push(row);
        next.pivots.push(pivot);
        Some(next)
    }

    fn solution(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            x[p] = r[n];
        }
        x
    }
}

struct Search<'a> {
    n: usize,
    constraints: &'a [Inequality],
    vertices: BTreeMap<Vec<i64>, Vec<f64>>,
}

impl Search<'_> {
    fn descend(&mut self, basis: &Basis, next: usize) {
        if basis.rows.len() == self.n {
            let x = basis.solution(self.n);
            if self.constraints.iter().all(|c| c.slack(&x) >= -FEASIBILITY_TOL) {
                let key = x.iter().map(|v| libm::round(v * 1e7) as i64).collect();
                self.vertices.entry(key).or_insert(x);
            }
            return;
        }
        let needed = self.n - basis.rows.len();
        for idx in next..self.constraints.len() {
            if self.constraints.len() - idx < needed {
                break;
            }
            let c = &self.constraints[idx];
            if let Some(b) = basis.with_row(&c.coeffs, c.rhs) {
                self.descend(&b, idx + 1);
            }
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Every vertex of the fundamental polytope, found by solving each set of
/// `n` linearly independent tight constraints.
pub fn enumerate_vertices(h: &ParityCheckMatrix) -> Result<Vec<Vec<f64>>, OracleError> {
    let constraints = relaxation_inequalities(h);
    let n = h.n();
    if binomial(constraints.len() as u64, n as u64) > ENUMERATION_MAX_BASES {
        return Err(OracleError::InstanceTooLarge {
            n,
            constraints: constraints.len(),
        });
    }
    let mut search = Search {
        n,
        constraints: &constraints,
        vertices: BTreeMap::new(),
    };
    search.descend(
        &Basis {
            rows: Vec::new(),
            pivots: Vec::new(),
        },
        0,
    );
    Ok(search.vertices.into_values().collect())
}
