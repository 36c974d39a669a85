use std::fmt;

use super::vec::{dot_words, words_for, xor_words, F2Vec, WORD_BITS};
use crate::error::{shape_err, Result};

/// Dense matrix over GF(2) with bit-packed rows.
///
/// Row `i` occupies `data[i * stride..(i + 1) * stride]`; unused high bits of
/// the last word in each row are kept at zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Column-major index lists of the nonzero entries, as used by message
/// passing and the alist format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseView {
    pub rows: usize,
    pub cols: usize,
    /// `row_support[i]` lists the columns set in row `i`, ascending.
    pub row_support: Vec<Vec<usize>>,
    /// `col_support[j]` lists the rows set in column `j`, ascending.
    pub col_support: Vec<Vec<usize>>,
}

impl F2Matrix {
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

    /// Build from rows of 0/1 bytes. All rows must share a length; `cols`
    /// resolves the width of an empty row list.
    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(shape_err(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// Convenience for literal matrices in code and tests.
    ///
    /// Panics on ragged input.
    pub fn from_dense<const C: usize>(rows: &[[u8; C]]) -> Self {
        let rows: Vec<Vec<u8>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(C, &rows).expect("rows have equal length")
    }

    pub fn from_row_vecs(cols: usize, rows: &[F2Vec]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(shape_err(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Build from per-row lists of set column indices.
    pub fn from_row_supports(rows: usize, cols: usize, supports: &[Vec<usize>]) -> Result<Self> {
        if supports.len() != rows {
            return Err(shape_err(format!(
                "{} row supports for {rows} rows",
                supports.len()
            )));
        }
        let mut m = Self::zeros(rows, cols);
        for (i, s) in supports.iter().enumerate() {
            for &j in s {
                if j >= cols {
                    return Err(shape_err(format!("column index {j} out of range {cols}")));
                }
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let idx = i * self.stride + j / WORD_BITS;
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> F2Vec {
        F2Vec::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn column(&self, j: usize) -> F2Vec {
        let mut v = F2Vec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn row_vecs(&self) -> Vec<F2Vec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn set_row(&mut self, i: usize, row: &F2Vec) {
        assert_eq!(row.len(), self.cols);
        self.row_words_mut(i).copy_from_slice(row.words());
    }

    /// `row[dst] ^= row[src]`.
    #[inline]
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        if src == dst {
            self.row_words_mut(dst).fill(0);
            return;
        }
        let stride = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * stride);
            (&lo[src * stride..(src + 1) * stride], &mut hi[..stride])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * stride);
            (&hi[..stride], &mut lo[dst * stride..(dst + 1) * stride])
        };
        xor_words(b, a);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Column indices of the set entries of row `i`.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let tz = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &F2Vec) -> Result<F2Vec> {
        if v.len() != self.cols {
            return Err(shape_err(format!(
                "vector of length {} against {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(self.mul_vec_unchecked(v))
    }

    pub(crate) fn mul_vec_unchecked(&self, v: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.rows);
        for i in 0..self.rows {
            if dot_words(self.row_words(i), v.words()) {
                out.set(i, true);
            }
        }
        out
    }

    /// Row-vector product `vᵀ · self`.
    pub fn vec_mul(&self, v: &F2Vec) -> Result<F2Vec> {
        if v.len() != self.rows {
            return Err(shape_err(format!(
                "row vector of length {} against {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = F2Vec::zeros(self.cols);
        for i in v.iter_ones() {
            xor_words(out.words_mut(), self.row_words(i));
        }
        Ok(out)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(shape_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let ones: Vec<usize> = self.row_ones(i).collect();
            let stride = out.stride;
            let dst = &mut out.data[i * stride..(i + 1) * stride];
            for k in ones {
                xor_words(dst, rhs.row_words(k));
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(shape_err(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        xor_words(&mut out.data, &rhs.data);
        Ok(out)
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                for k in 0..rhs.rows {
                    for l in rhs.row_ones(k) {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        Self::block(&[vec![self.clone(), rhs.clone()]])
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(shape_err(format!(
                "vstack of widths {} and {}",
                self.cols, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&rhs.data);
        Ok(out)
    }

    /// Assemble a block matrix from a grid of blocks. Every block in a grid row
    /// must share its row count and every block in a grid column its width.
    pub fn block(grid: &[Vec<Self>]) -> Result<Self> {
        let Some(first) = grid.first() else {
            return Ok(Self::zeros(0, 0));
        };
        let widths: Vec<usize> = first.iter().map(Self::cols).collect();
        let mut heights = Vec::with_capacity(grid.len());
        for (bi, brow) in grid.iter().enumerate() {
            if brow.len() != widths.len() {
                return Err(shape_err(format!(
                    "block row {bi} has {} blocks",
                    brow.len()
                )));
            }
            let h = brow[0].rows;
            for (bj, b) in brow.iter().enumerate() {
                if b.rows != h || b.cols != widths[bj] {
                    return Err(shape_err(format!(
                        "block ({bi},{bj}) is {}x{}, expected {h}x{}",
                        b.rows, b.cols, widths[bj]
                    )));
                }
            }
            heights.push(h);
        }
        let total_cols: usize = widths.iter().sum();
        let total_rows: usize = heights.iter().sum();
        let mut out = Self::zeros(total_rows, total_cols);
        let mut r0 = 0;
        for (brow, &h) in grid.iter().zip(&heights) {
            let mut c0 = 0;
            for b in brow {
                for i in 0..h {
                    for j in b.row_ones(i) {
                        out.set(r0 + i, c0 + j, true);
                    }
                }
                c0 += b.cols;
            }
            r0 += h;
        }
        Ok(out)
    }

    /// Submatrix of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                if self.get(i, j) {
                    out.set(i, k, true);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            out.row_words_mut(k).copy_from_slice(self.row_words(i));
        }
        out
    }

    /// Column range `start..end`.
    pub fn column_range(&self, start: usize, end: usize) -> Self {
        let cols: Vec<usize> = (start..end).collect();
        self.select_columns(&cols)
    }

    pub fn sparse_view(&self) -> SparseView {
        let row_support: Vec<Vec<usize>> =
            (0..self.rows).map(|i| self.row_ones(i).collect()).collect();
        let mut col_support = vec![Vec::new(); self.cols];
        for (i, r) in row_support.iter().enumerate() {
            for &j in r {
                col_support[j].push(i);
            }
        }
        SparseView {
            rows: self.rows,
            cols: self.cols,
            row_support,
            col_support,
        }
    }

    /// Indices of all-zero columns.
    pub fn zero_columns(&self) -> Vec<usize> {
        let mut any = F2Vec::zeros(self.cols);
        for i in 0..self.rows {
            xor_or(any.words_mut(), self.row_words(i));
        }
        (0..self.cols).filter(|&j| !any.get(j)).collect()
    }
}

fn xor_or(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
