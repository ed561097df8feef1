//! Parity-check matrices, their Tanner-graph index sets and GF(2) helpers.
//!
//! Rows are check nodes `j` and columns are variable nodes `i`. Every one in
//! the matrix is an edge `(i, j)` with a dense identifier; edges are numbered
//! row by row, so the edges of check `j` occupy a contiguous id range.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::error::CodeError;

/// Dense edge identifier.
pub type EdgeId = usize;

/// Sparse binary parity-check matrix with both adjacency directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    n: usize,
    // CSR by check: edges of check j are check_offsets[j]..check_offsets[j + 1]
    check_offsets: Vec<usize>,
    edge_var: Vec<usize>,
    edge_check: Vec<usize>,
    // CSR by variable: position p in var_offsets[i]..var_offsets[i + 1]
    var_offsets: Vec<usize>,
    var_checks: Vec<usize>,
    var_edges: Vec<EdgeId>,
}

impl ParityCheckMatrix {
    /// Builds a matrix with `n` columns from 0-based row supports.
    ///
    /// Each row must be nonempty with distinct in-range column indices; the
    /// order inside a row does not matter.
    pub fn from_rows<R: AsRef<[usize]>>(n: usize, rows: &[R]) -> Result<Self, CodeError> {
        let mut check_offsets = Vec::with_capacity(rows.len() + 1);
        let mut edge_var = Vec::new();
        let mut edge_check = Vec::new();
        check_offsets.push(0);
        for (j, row) in rows.iter().enumerate() {
            let mut row: Vec<usize> = row.as_ref().to_vec();
            if row.is_empty() {
                return Err(CodeError::EmptyRow { row: j });
            }
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(CodeError::DuplicateEntry { row: j, col: w[0] });
                }
            }
            if let Some(&c) = row.iter().find(|&&c| c >= n) {
                return Err(CodeError::IndexOutOfRange { row: j, col: c, n });
            }
            for c in row {
                edge_var.push(c);
                edge_check.push(j);
            }
            check_offsets.push(edge_var.len());
        }

        let mut degree = vec![0usize; n];
        for &i in &edge_var {
            degree[i] += 1;
        }
        let mut var_offsets = Vec::with_capacity(n + 1);
        var_offsets.push(0);
        for d in &degree {
            var_offsets.push(var_offsets.last().unwrap() + d);
        }
        let mut fill = var_offsets.clone();
        let mut var_checks = vec![0; edge_var.len()];
        let mut var_edges = vec![0; edge_var.len()];
        // Edges are visited in check order, so every column list comes out sorted.
        for (e, (&i, &j)) in edge_var.iter().zip(&edge_check).enumerate() {
            var_checks[fill[i]] = j;
            var_edges[fill[i]] = e;
            fill[i] += 1;
        }

        Ok(Self {
            n,
            check_offsets,
            edge_var,
            edge_check,
            var_offsets,
            var_checks,
            var_edges,
        })
    }

    /// Builds a matrix from a dense 0/1 row-major description.
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, CodeError> {
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let supports: Vec<Vec<usize>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b != 0)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        if let Some(r) = rows.iter().find(|r| r.as_ref().len() != n) {
            return Err(CodeError::LengthMismatch {
                expected: n,
                found: r.as_ref().len(),
            });
        }
        Self::from_rows(n, &supports)
    }

    /// Code length (number of variable nodes).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parity checks.
    pub fn m(&self) -> usize {
        self.check_offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Sorted variable indices of check `j` (the set I_j).
    pub fn check_vars(&self, j: usize) -> &[usize] {
        &self.edge_var[self.check_offsets[j]..self.check_offsets[j + 1]]
    }

    /// Edge ids of check `j`, aligned with [`check_vars`](Self::check_vars).
    pub fn check_edges(&self, j: usize) -> core::ops::Range<EdgeId> {
        self.check_offsets[j]..self.check_offsets[j + 1]
    }

    /// Sorted check indices of variable `i` (the set J_i).
    pub fn var_checks(&self, i: usize) -> &[usize] {
        &self.var_checks[self.var_offsets[i]..self.var_offsets[i + 1]]
    }

    /// Edge ids of variable `i`, aligned with [`var_checks`](Self::var_checks).
    pub fn var_edges(&self, i: usize) -> &[EdgeId] {
        &self.var_edges[self.var_offsets[i]..self.var_offsets[i + 1]]
    }

    pub fn check_degree(&self, j: usize) -> usize {
        self.check_offsets[j + 1] - self.check_offsets[j]
    }

    pub fn var_degree(&self, i: usize) -> usize {
        self.var_offsets[i + 1] - self.var_offsets[i]
    }

    /// `(variable, check)` endpoints of an edge.
    pub fn edge(&self, e: EdgeId) -> (usize, usize) {
        (self.edge_var[e], self.edge_check[e])
    }

    /// Looks up the id of edge `(i, j)`.
    pub fn edge_id(&self, i: usize, j: usize) -> Option<EdgeId> {
        if j >= self.m() || i >= self.n {
            return None;
        }
        let vars = self.check_vars(j);
        vars.binary_search(&i).ok().map(|p| self.check_offsets[j] + p)
    }

    /// Position of edge `e` inside its check's support.
    pub fn position_in_check(&self, e: EdgeId) -> usize {
        e - self.check_offsets[self.edge_check[e]]
    }

    /// Row supports as owned vectors.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.m()).map(|j| self.check_vars(j).to_vec()).collect()
    }

    /// Column supports as owned vectors.
    pub fn cols(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.var_checks(i).to_vec()).collect()
    }

    /// Checks of weight below three.
    ///
    /// Coordinate-ascent convergence is only guaranteed when this is empty.
    pub fn low_weight_rows(&self) -> Vec<usize> {
        (0..self.m()).filter(|&j| self.check_degree(j) < 3).collect()
    }

    /// Number of unsatisfied checks for the word `x`.
    pub fn syndrome_weight(&self, x: &[u8]) -> Result<usize, CodeError> {
        if x.len() != self.n {
            return Err(CodeError::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.m())
            .filter(|&j| self.check_vars(j).iter().fold(0u8, |p, &i| p ^ (x[i] & 1)) == 1)
            .count())
    }

    pub fn is_codeword(&self, x: &[u8]) -> bool {
        matches!(self.syndrome_weight(x), Ok(0))
    }

    /// Rank over GF(2).
    pub fn gf2_rank(&self) -> usize {
        let mut rows = self.packed_rows();
        let mut rank = 0;
        for col in 0..self.n {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Code dimension `n - rank(H)`.
    pub fn dimension(&self) -> usize {
        self.n - self.gf2_rank()
    }

    /// A basis of the code (the GF(2) null space of H), one word per row.
    pub fn codeword_basis(&self) -> Vec<Vec<u8>> {
        let mut rows = self.packed_rows();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.n {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let is_pivot = {
            let mut v = vec![false; self.n];
            pivots.iter().for_each(|&c| v[c] = true);
            v
        };
        // One basis vector per free column: set it, then solve for the pivots.
        (0..self.n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut word = vec![0u8; self.n];
                word[free] = 1;
                let (w, bit) = (free / 64, 1u64 << (free % 64));
                for (r, &pc) in pivots.iter().enumerate() {
                    if rows[r][w] & bit != 0 {
                        word[pc] = 1;
                    }
                }
                word
            })
            .collect()
    }

    fn packed_rows(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64).max(1);
        (0..self.m())
            .map(|j| {
                let mut row = vec![0u64; words];
                for &i in self.check_vars(j) {
                    row[i / 64] |= 1 << (i % 64);
                }
                row
            })
            .collect()
    }

    /// Random `(var_degree, check_degree)`-regular matrix.
    ///
    /// Variables are attached one edge at a time, in random order, to a
    /// check of largest remaining capacity, never twice to the same check.
    /// With `avoid_four_cycles` a check is also skipped when it already
    /// shares a variable with one of the current variable's checks. Dead
    /// ends restart the construction.
    pub fn random_regular<R: Rng + ?Sized>(
        n: usize,
        var_degree: usize,
        check_degree: usize,
        avoid_four_cycles: bool,
        rng: &mut R,
    ) -> Result<Self, CodeError> {
        if var_degree == 0 || check_degree == 0 || !(n * var_degree).is_multiple_of(check_degree) {
            return Err(CodeError::IrregularDimensions {
                n,
                var_degree,
                check_degree,
            });
        }
        let m = n * var_degree / check_degree;
        let mut order: Vec<usize> = (0..n).collect();
        let mut blocked = vec![false; m];
        let mut candidates = Vec::with_capacity(m);
        'attempt: for _ in 0..1_000 {
            let mut capacity = vec![check_degree; m];
            let mut rows: Vec<Vec<usize>> = vec![Vec::new(); m];
            let mut var_checks: Vec<Vec<usize>> = vec![Vec::new(); n];
            order.shuffle(rng);
            for &i in &order {
                for _ in 0..var_degree {
                    blocked.iter_mut().for_each(|b| *b = false);
                    for &j in &var_checks[i] {
                        blocked[j] = true;
                        if avoid_four_cycles {
                            for &k in &rows[j] {
                                for &j2 in &var_checks[k] {
                                    blocked[j2] = true;
                                }
                            }
                        }
                    }
                    let open = |j: &usize| !blocked[*j] && capacity[*j] > 0;
                    let Some(most) = (0..m).filter(open).map(|j| capacity[j]).max() else {
                        continue 'attempt;
                    };
                    candidates.clear();
                    candidates.extend((0..m).filter(|j| open(j) && capacity[*j] == most));
                    let j = *candidates.choose(rng).unwrap();
                    capacity[j] -= 1;
                    rows[j].push(i);
                    var_checks[i].push(j);
                }
            }
            return Self::from_rows(n, &rows);
        }
        Err(CodeError::ConstructionFailed)
    }

    /// True when two checks share at least two variables.
    pub fn has_four_cycle(&self) -> bool {
        let mut seen = vec![usize::MAX; self.m()];
        for j in 0..self.m() {
            for &i in self.check_vars(j) {
                for &j2 in self.var_checks(i) {
                    if j2 == j {
                        continue;
                    }
                    if seen[j2] == j {
                        return true;
                    }
                    seen[j2] = j;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn hamming() -> ParityCheckMatrix {
        ParityCheckMatrix::from_rows(7, &[vec![0, 1, 2, 4], vec![1, 2, 3, 5], vec![0, 1, 3, 6]]).unwrap()
    }

    fn assert_transpose_consistent(h: &ParityCheckMatrix) {
        for j in 0..h.m() {
            for i in 0..h.n() {
                assert_eq!(h.check_vars(j).contains(&i), h.var_checks(i).contains(&j));
            }
        }
        let by_rows: usize = (0..h.m()).map(|j| h.check_degree(j)).sum();
        let by_cols: usize = (0..h.n()).map(|i| h.var_degree(i)).sum();
        assert_eq!(by_rows, h.num_edges());
        assert_eq!(by_cols, h.num_edges());
        for i in 0..h.n() {
            for (&j, &e) in h.var_checks(i).iter().zip(h.var_edges(i)) {
                assert_eq!(h.edge(e), (i, j));
                assert_eq!(h.edge_id(i, j), Some(e));
            }
        }
    }

    #[test]
    fn hamming_index_sets() {
        let h = hamming();
        assert_eq!((h.m(), h.n(), h.num_edges()), (3, 7, 12));
        assert_eq!(h.var_checks(1), &[0, 1, 2]);
        assert_eq!(h.var_checks(6), &[2]);
        assert_transpose_consistent(&h);
    }

    #[test]
    fn rejects_bad_rows() {
        assert_eq!(
            ParityCheckMatrix::from_rows(3, &[vec![0, 1, 1]]),
            Err(CodeError::DuplicateEntry { row: 0, col: 1 })
        );
        assert_eq!(
            ParityCheckMatrix::from_rows(3, &[vec![0, 3]]),
            Err(CodeError::IndexOutOfRange { row: 0, col: 3, n: 3 })
        );
        assert_eq!(
            ParityCheckMatrix::from_rows(3, &[Vec::<usize>::new()]),
            Err(CodeError::EmptyRow { row: 0 })
        );
    }

    #[test]
    fn ranks() {
        let single = ParityCheckMatrix::from_rows(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!((single.gf2_rank(), single.dimension()), (1, 2));
        let h = hamming();
        assert_eq!((h.gf2_rank(), h.dimension()), (3, 4));
        let cycle = ParityCheckMatrix::from_rows(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!((cycle.gf2_rank(), cycle.dimension()), (2, 1));
    }

    #[test]
    fn syndromes() {
        let h = hamming();
        assert_eq!(h.syndrome_weight(&[0; 7]), Ok(0));
        assert_eq!(h.syndrome_weight(&[1, 0, 1, 1, 0, 0, 0]), Ok(0));
        assert_eq!(h.syndrome_weight(&[1, 1, 1, 0, 0, 0, 0]), Ok(1));
        assert_eq!(h.syndrome_weight(&[1, 0, 0, 0, 0, 0, 0]), Ok(2));
        assert_eq!(
            h.syndrome_weight(&[0; 6]),
            Err(CodeError::LengthMismatch { expected: 7, found: 6 })
        );
    }

    #[test]
    fn basis_spans_code() {
        let h = hamming();
        let basis = h.codeword_basis();
        assert_eq!(basis.len(), 4);
        for word in &basis {
            assert!(h.is_codeword(word));
        }
        // Brute force: the code has exactly 2^k words.
        let count = (0u32..128)
            .filter(|w| {
                let x: Vec<u8> = (0..7).map(|b| ((w >> b) & 1) as u8).collect();
                h.is_codeword(&x)
            })
            .count();
        assert_eq!(count, 16);
    }

    #[test]
    fn regular_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = ParityCheckMatrix::random_regular(96, 3, 6, true, &mut rng).unwrap();
        assert_eq!((h.n(), h.m(), h.num_edges()), (96, 48, 288));
        assert!((0..h.n()).all(|i| h.var_degree(i) == 3));
        assert!((0..h.m()).all(|j| h.check_degree(j) == 6));
        assert!(!h.has_four_cycle());
        assert_transpose_consistent(&h);
        assert!(h.low_weight_rows().is_empty());
    }

    proptest! {
        #[test]
        fn syndrome_parity_is_additive(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = ParityCheckMatrix::random_regular(24, 3, 6, false, &mut rng).unwrap();
            let x: Vec<u8> = (0..24).map(|_| rng.random_range(0..2)).collect();
            let y: Vec<u8> = (0..24).map(|_| rng.random_range(0..2)).collect();
            for j in 0..h.m() {
                let parity = |w: &[u8]| h.check_vars(j).iter().fold(0, |p, &i| p ^ w[i]);
                let xy: Vec<u8> = x.iter().zip(&y).map(|(a, b)| a ^ b).collect();
                prop_assert_eq!(parity(&xy), parity(&x) ^ parity(&y));
            }
        }

        #[test]
        fn construction_is_transpose_consistent(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = ParityCheckMatrix::random_regular(30, 3, 5, false, &mut rng).unwrap();
            assert_transpose_consistent(&h);
        }
    }
}
