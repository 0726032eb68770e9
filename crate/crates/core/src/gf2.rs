//! Dense linear algebra over GF(2).
//!
//! A [`BitMatrix`] stores its rows as packed `u64` words. Every rank query
//! works on a fresh copy of the data, so a matrix can be shared freely
//! between threads once it is built.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD)
}

/// A dense GF(2) matrix with row-major packed rows.
///
/// Bits past `cols` in the last word of a row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from `0`/`1` strings, one per row.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().trim().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref().trim();
            if r.len() != cols {
                return Err(Error::input(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    other => return Err(Error::input(format!("bad matrix entry {other:?}"))),
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        let w = &mut self.data[r * self.stride + c / WORD];
        let bit = 1u64 << (c % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        let v = self.get(r, c);
        self.set(r, c, !v);
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    /// `row[dst] ^= row[src]`
    pub fn add_row(&mut self, src: usize, dst: usize) {
        if src == dst {
            // x + x = 0
            let s = dst * self.stride;
            self.data[s..s + self.stride].fill(0);
            return;
        }
        let (s, d) = (src * self.stride, dst * self.stride);
        for k in 0..self.stride {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn row_string(&self, r: usize) -> String {
        (0..self.cols)
            .map(|c| if self.get(r, c) { '1' } else { '0' })
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<bool> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero_column(&self, c: usize) -> bool {
        (0..self.rows).all(|r| !self.get(r, c))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Copies the listed columns, in the listed order, into a new matrix.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        self.check_columns(cols)?;
        let mut m = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    m.set(r, j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            let (s, d) = (r * self.stride, i * self.stride);
            m.data[d..d + self.stride].copy_from_slice(&self.data[s..s + self.stride]);
        }
        m
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    m.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    m.set(r, self.cols + c, true);
                }
            }
        }
        m
    }

    /// Entrywise sum over GF(2).
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        m
    }

    fn check_columns(&self, cols: &[usize]) -> Result<()> {
        match cols.iter().find(|&&c| c >= self.cols) {
            Some(&c) => Err(Error::input(format!(
                "column index {c} out of range for {} columns",
                self.cols
            ))),
            None => Ok(()),
        }
    }

    /// Reduced row-echelon form and the strictly increasing pivot columns.
    pub fn row_reduce(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(p, next);
            for r in 0..m.rows {
                if r != next && m.get(r, c) {
                    m.add_row(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// Dimension of the span of the selected columns.
    pub fn rank_of_columns(&self, cols: &[usize]) -> Result<usize> {
        self.check_columns(cols)?;
        if self.rows <= WORD {
            let words = cols.iter().map(|&c| self.column_word(c));
            return Ok(xor_basis_rank(words));
        }
        Ok(self.select_columns(cols)?.rank())
    }

    /// Column `c` packed into one word; requires `rows <= 64`.
    #[inline]
    pub(crate) fn column_word(&self, c: usize) -> u64 {
        debug_assert!(self.rows <= WORD);
        let (w, b) = (c / WORD, c % WORD);
        let mut out = 0u64;
        for r in 0..self.rows {
            out |= ((self.data[r * self.stride + w] >> b) & 1) << r;
        }
        out
    }

    /// Every column packed into a word; `None` when there are more than 64 rows.
    pub(crate) fn column_words(&self) -> Option<Vec<u64>> {
        (self.rows <= WORD).then(|| (0..self.cols).map(|c| self.column_word(c)).collect())
    }

    /// Drops all-zero rows.
    pub fn without_zero_rows(&self) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| !self.row_is_zero(r)).collect();
        self.select_rows(&keep)
    }

    /// True when `v` (length `cols`) lies in the row space.
    pub fn row_space_contains(&self, v: &[bool]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut stacked = Self::zeros(self.rows + 1, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    stacked.set(r, c, true);
                }
            }
        }
        for (c, &b) in v.iter().enumerate() {
            if b {
                stacked.set(self.rows, c, true);
            }
        }
        stacked.rank() == self.rank()
    }
}

/// Rank of a set of vectors packed into words, by greedy basis insertion.
pub(crate) fn xor_basis_rank(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; WORD];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row_string(r))?;
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row_string(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_matrix(rows: usize, cols: usize, bits: &[bool]) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, bits[r * cols + c]);
            }
        }
        m
    }

    #[test]
    fn identity_has_full_rank() {
        let m = BitMatrix::identity(3);
        assert_eq!(m.rank_of_columns(&[0, 1, 2]).unwrap(), 3);
        assert_eq!(m.rank_of_columns(&[]).unwrap(), 0);
    }

    #[test]
    fn printed_fano_like_matrix_has_rank_three() {
        let m = BitMatrix::from_strings(&["100011111", "010101111", "001110111"]).unwrap();
        let all: Vec<usize> = (0..9).collect();
        assert_eq!(m.rank_of_columns(&all).unwrap(), 3);
    }

    #[test]
    fn out_of_range_column_is_an_input_error() {
        let m = BitMatrix::identity(2);
        assert!(matches!(m.rank_of_columns(&[0, 2]), Err(Error::Input(_))));
    }

    #[test]
    fn row_reduce_small_cases() {
        let id = BitMatrix::identity(4);
        let (r, p) = id.row_reduce();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2, 3]);

        let z = BitMatrix::zeros(3, 5);
        let (r, p) = z.row_reduce();
        assert_eq!(r, z);
        assert!(p.is_empty());

        let dup = BitMatrix::from_strings(&["11", "11"]).unwrap();
        let (r, p) = dup.row_reduce();
        assert_eq!(p, vec![0]);
        assert_eq!(r.row_string(0), "11");
        assert_eq!(r.row_string(1), "00");
    }

    #[test]
    fn wide_and_tall_matrices_use_the_general_path() {
        let tall = BitMatrix::identity(70);
        let cols: Vec<usize> = (0..70).step_by(3).collect();
        assert_eq!(tall.rank_of_columns(&cols).unwrap(), cols.len());
        assert!(tall.column_words().is_none());
    }

    #[test]
    fn padding_bits_stay_zero() {
        let mut m = BitMatrix::zeros(2, 70);
        m.set(0, 69, true);
        m.add_row(0, 1);
        assert_eq!(m.data[1] >> 6, 0);
        assert_eq!(m.data[3] >> 6, 0);
    }

    proptest! {
        #[test]
        fn column_rank_is_submodular_and_monotone(
            bits in proptest::collection::vec(any::<bool>(), 8 * 24),
            s in proptest::collection::vec(any::<bool>(), 24),
            t in proptest::collection::vec(any::<bool>(), 24),
        ) {
            let m = random_matrix(8, 24, &bits);
            let sv: Vec<usize> = (0..24).filter(|&i| s[i]).collect();
            let tv: Vec<usize> = (0..24).filter(|&i| t[i]).collect();
            let uv: Vec<usize> = (0..24).filter(|&i| s[i] || t[i]).collect();
            let iv: Vec<usize> = (0..24).filter(|&i| s[i] && t[i]).collect();
            let (rs, rt) = (m.rank_of_columns(&sv).unwrap(), m.rank_of_columns(&tv).unwrap());
            let (ru, ri) = (m.rank_of_columns(&uv).unwrap(), m.rank_of_columns(&iv).unwrap());
            prop_assert!(ru <= rs + rt);
            prop_assert!(ru + ri <= rs + rt);
            prop_assert!(rs <= ru && rt <= ru);
            prop_assert!(rs <= 8.min(sv.len()));
        }

        #[test]
        fn column_rank_equals_transposed_row_rank(
            bits in proptest::collection::vec(any::<bool>(), 8 * 24),
            s in proptest::collection::vec(any::<bool>(), 24),
        ) {
            let m = random_matrix(8, 24, &bits);
            let sv: Vec<usize> = (0..24).filter(|&i| s[i]).collect();
            let by_cols = m.rank_of_columns(&sv).unwrap();
            let by_rows = m.transpose().select_rows(&sv).rank();
            let general = m.select_columns(&sv).unwrap().rank();
            prop_assert_eq!(by_cols, by_rows);
            prop_assert_eq!(by_cols, general);
        }

        #[test]
        fn row_reduce_preserves_row_space(bits in proptest::collection::vec(any::<bool>(), 6 * 10)) {
            let m = random_matrix(6, 10, &bits);
            let (r, pivots) = m.row_reduce();
            prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
            for i in 0..6 {
                prop_assert!(r.row_space_contains(&m.column_free_row(i)));
                prop_assert!(m.row_space_contains(&r.column_free_row(i)));
            }
        }
    }

    impl BitMatrix {
        fn column_free_row(&self, r: usize) -> Vec<bool> {
            (0..self.cols).map(|c| self.get(r, c)).collect()
        }
    }
}
