//! Symmetric bit matrices over GF(2).
//!
//! Rows are packed into `u64` words. Elimination always runs on a scratch
//! copy, so a matrix can be shared freely between callers that keep taking
//! submatrices of it.

use std::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// Symmetric square matrix over GF(2). Diagonal bits encode loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymBitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

impl SymBitMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = words_for(n);
        SymBitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Builds a matrix from an entry predicate evaluated on the upper triangle
    /// (`i <= j`) and mirrored, so the result is symmetric by construction.
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                if entry(i, j) {
                    m.set_sym(i, j, true);
                }
            }
        }
        m
    }

    /// Parses nested rows; returns `None` unless the input is square and symmetric.
    pub fn from_rows(rows: &[Vec<u8>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        for i in 0..n {
            for j in 0..n {
                if (rows[i][j] != 0) != (rows[j][i] != 0) {
                    return None;
                }
            }
        }
        Some(Self::from_fn(n, |i, j| rows[i][j] != 0))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        (self.bits[i * self.words + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    fn put(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Sets entries (i,j) and (j,i).
    pub fn set_sym(&mut self, i: usize, j: usize, value: bool) {
        self.put(i, j, value);
        self.put(j, i, value);
    }

    /// Flips entries (i,j) and (j,i); flips once when `i == j`.
    pub fn toggle_sym(&mut self, i: usize, j: usize) {
        let v = self.get(i, j);
        self.set_sym(i, j, !v);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Number of set bits in row `i` outside the diagonal.
    pub fn off_diagonal_degree(&self, i: usize) -> usize {
        let ones: u32 = self.row(i).iter().map(|w| w.count_ones()).sum();
        ones as usize - usize::from(self.get(i, i))
    }

    /// Rank over GF(2) by Gaussian elimination with whole-row XOR.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.n).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.n {
            let (w, mask) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = std::mem::take(&mut rows[rank]);
            for row in rows.iter_mut().skip(rank + 1) {
                if row[w] & mask != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= *b;
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }

    pub fn corank(&self) -> usize {
        self.n - self.rank()
    }

    /// The principal submatrix on `idx`, in the given order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Result<SymBitMatrix, MatrixError> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.n) {
            return Err(MatrixError::IndexOutOfRange {
                index: bad,
                dim: self.n,
            });
        }
        Ok(Self::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j])))
    }

    /// Simultaneous row/column permutation: entry (i,j) of the result is
    /// entry (perm\[i\], perm\[j\]) of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SymBitMatrix, MatrixError> {
        self.principal_submatrix(perm)
    }

    /// Block-diagonal sum with `self` in the upper-left block.
    pub fn direct_sum(&self, other: &SymBitMatrix) -> SymBitMatrix {
        let n = self.n;
        Self::from_fn(n + other.n, |i, j| {
            if i < n && j < n {
                self.get(i, j)
            } else if i >= n && j >= n {
                other.get(i - n, j - n)
            } else {
                false
            }
        })
    }
}

impl fmt::Debug for SymBitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymBitMatrix[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "|")?;
            }
            for j in 0..self.n {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

/// Rank of a set of rows of at most 64 columns each; destroys `rows`.
pub fn rank_of_rows(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for k in 0..rows.len() {
        let pivot = rows[k];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows.iter_mut().skip(k + 1) {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> SymBitMatrix {
        SymBitMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Exhaustive oracle: the largest row subset whose XOR over every
    /// non-empty sub-subset is never zero.
    fn brute_rank(mat: &SymBitMatrix) -> usize {
        let n = mat.dim();
        let rows: Vec<u64> = (0..n).map(|i| mat.row(i)[0]).collect();
        let mut best = 0;
        for subset in 0u32..(1 << n) {
            let members: Vec<u64> = (0..n).filter(|i| subset >> i & 1 == 1).map(|i| rows[i]).collect();
            let k = members.len();
            let independent = (1u32..(1 << k)).all(|c| {
                (0..k).filter(|i| c >> i & 1 == 1).fold(0u64, |acc, i| acc ^ members[i]) != 0
            });
            if independent {
                best = best.max(k);
            }
        }
        best
    }

    #[test]
    fn rank_examples() {
        assert_eq!(SymBitMatrix::zeros(0).rank(), 0);
        assert_eq!(m(&[&[1]]).rank(), 1);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).rank(), 2);
        assert_eq!(m(&[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn corank_examples() {
        assert_eq!(SymBitMatrix::zeros(0).corank(), 0);
        assert_eq!(SymBitMatrix::zeros(2).corank(), 2);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).corank(), 0);
    }

    #[test]
    fn submatrix_examples() {
        let a = m(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(a.principal_submatrix(&[0, 1, 2]).unwrap(), a);
        assert_eq!(a.principal_submatrix(&[]).unwrap().dim(), 0);
        assert_eq!(a.principal_submatrix(&[0, 2]).unwrap(), m(&[&[1, 0], &[0, 0]]));
        assert_eq!(
            a.principal_submatrix(&[0, 3]),
            Err(MatrixError::IndexOutOfRange { index: 3, dim: 3 })
        );
    }

    #[test]
    fn rank_matches_exhaustive_oracle_up_to_dim_4() {
        for n in 0..=4usize {
            let cells = n * (n + 1) / 2;
            for pattern in 0u32..(1 << cells) {
                let mut bit = 0;
                let mut mat = SymBitMatrix::zeros(n);
                for i in 0..n {
                    for j in i..n {
                        if pattern >> bit & 1 == 1 {
                            mat.set_sym(i, j, true);
                        }
                        bit += 1;
                    }
                }
                assert_eq!(mat.rank(), brute_rank(&mat), "{mat:?}");
            }
        }
    }

    #[test]
    fn packed_rows_agree_with_matrix_rank() {
        for n in 0..=4usize {
            let cells = n * (n + 1) / 2;
            for pattern in 0u32..(1 << cells) {
                let mut bit = 0;
                let mut mat = SymBitMatrix::zeros(n);
                for i in 0..n {
                    for j in i..n {
                        if pattern >> bit & 1 == 1 {
                            mat.set_sym(i, j, true);
                        }
                        bit += 1;
                    }
                }
                let mut rows: Vec<u64> = (0..n).map(|i| mat.row(i)[0]).collect();
                assert_eq!(rank_of_rows(&mut rows), mat.rank());
            }
        }
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        // a perfect matching on 130 vertices has full rank
        let n = 130;
        let mat = SymBitMatrix::from_fn(n, |i, j| i % 2 == 0 && j == i + 1);
        assert_eq!(mat.rank(), n);
        let mut looped = SymBitMatrix::zeros(n);
        looped.set_sym(129, 129, true);
        assert_eq!(looped.rank(), 1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_matrix(max: usize) -> impl Strategy<Value = SymBitMatrix> {
            (0..=max).prop_flat_map(|n| {
                proptest::collection::vec(any::<bool>(), n * n)
                    .prop_map(move |cells| SymBitMatrix::from_fn(n, |i, j| cells[i * n + j]))
            })
        }

        proptest! {
            #[test]
            fn rank_matches_oracle(mat in arb_matrix(6)) {
                prop_assert_eq!(mat.rank(), brute_rank(&mat));
                prop_assert_eq!(mat.rank() + mat.corank(), mat.dim());
            }

            #[test]
            fn rank_invariant_under_permutation(
                (mat, perm) in arb_matrix(8).prop_flat_map(|m| {
                    let n = m.dim();
                    (Just(m), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
                })
            ) {
                prop_assert_eq!(mat.permuted(&perm).unwrap().rank(), mat.rank());
            }
        }
    }
}
