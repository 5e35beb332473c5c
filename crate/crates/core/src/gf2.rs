//! Dense square matrices over the two-element field.
//!
//! Rows are bit-packed into `u64` words so that elimination is a sequence of
//! word-wide XORs. Every adjacency-type matrix in the crate (A(G), A(G)+E,
//! the completed matrices used by the looped-graph map) lives here.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Square matrix over Z/2 with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(n: usize) -> Self {
        let stride = words_for(n);
        Self { n, stride, bits: vec![0; n * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. Panics if the rows are not square.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), n, "row {i} has length {} in a {n}x{n} matrix", row.len());
            for (j, &x) in row.iter().enumerate() {
                if x & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds an `n x n` matrix from an entry function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        (self.bits[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.n && j < self.n);
        let w = &mut self.bits[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    /// Packed words of row `i`; bits past column `n - 1` are always zero.
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> Vec<bool> {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }

    pub fn diagonal(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Entry-wise sum over Z/2.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect();
        Self { n: self.n, stride: self.stride, bits }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    let (dst, src) = (i * self.stride, k * other.stride);
                    for w in 0..self.stride {
                        out.bits[dst + w] ^= other.bits[src + w];
                    }
                }
            }
        }
        out
    }

    /// Rank over Z/2 by row elimination.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.n).map(|i| self.row_words(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.n {
            let (w, mask) = (col / WORD, 1u64 << (col % WORD));
            let Some(p) = (rank..self.n).find(|&r| rows[r][w] & mask != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for r in rank + 1..self.n {
                if rows[r][w] & mask != 0 {
                    xor_into(&mut rows[r], &pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn corank(&self) -> usize {
        self.n - self.rank()
    }

    /// Determinant over Z/2. The 0x0 matrix has determinant 1.
    pub fn determinant(&self) -> bool {
        self.rank() == self.n
    }

    /// Inverse by Gauss-Jordan elimination on the block `[M | E]`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut left: Vec<Vec<u64>> = (0..n).map(|i| self.row_words(i).to_vec()).collect();
        let mut right: Vec<Vec<u64>> = (0..n).map(|i| Self::identity(n).row_words(i).to_vec()).collect();
        for col in 0..n {
            let (w, mask) = (col / WORD, 1u64 << (col % WORD));
            let p = (col..n).find(|&r| left[r][w] & mask != 0).ok_or(Error::SingularMatrix)?;
            left.swap(col, p);
            right.swap(col, p);
            let (pl, pr) = (left[col].clone(), right[col].clone());
            for r in 0..n {
                if r != col && left[r][w] & mask != 0 {
                    xor_into(&mut left[r], &pl);
                    xor_into(&mut right[r], &pr);
                }
            }
        }
        let mut out = Self::zeros(n);
        for (i, row) in right.into_iter().enumerate() {
            out.bits[i * out.stride..(i + 1) * out.stride].copy_from_slice(&row);
        }
        Ok(out)
    }

    /// Removes the listed rows and the same-numbered columns.
    pub fn delete_rows_cols(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange { index: bad, len: self.n });
        }
        let keep: Vec<usize> = (0..self.n).filter(|i| !indices.contains(i)).collect();
        Ok(self.principal_submatrix(&keep))
    }

    /// The submatrix on rows and columns `keep`, in the given order.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]))
    }

    /// `M + E_ii`: the matrix with one diagonal bit toggled.
    pub fn flip_diagonal_entry(&self, i: usize) -> Result<Self> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, len: self.n });
        }
        let mut m = self.clone();
        m.toggle(i, i);
        Ok(m)
    }

    /// Copy with the diagonal replaced by `diag`.
    pub fn with_diagonal(&self, diag: &[bool]) -> Self {
        assert_eq!(diag.len(), self.n, "diagonal length mismatch");
        let mut m = self.clone();
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// entry `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        self.principal_submatrix(perm)
    }
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let line: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix({}x{})", self.n, self.n)?;
        fmt::Display::fmt(self, f)
    }
}
