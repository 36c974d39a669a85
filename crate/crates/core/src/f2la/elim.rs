//! Gauss–Jordan elimination and the routines built on it.

use super::matrix::F2Matrix;
use super::vec::F2Vec;
use crate::error::{shape_err, Error, Result};

/// Reduced row-echelon form of a matrix relative to a column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationResult {
    /// Pivot columns in the order they were found; pivot `i` sits in row `i`.
    pub pivot_columns: Vec<usize>,
    /// Invertible `rows × rows` matrix with `row_transform · M = reduced`.
    pub row_transform: F2Matrix,
    pub reduced: F2Matrix,
}

impl EliminationResult {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

fn check_permutation(order: &[usize], cols: usize) -> Result<()> {
    if order.len() != cols {
        return Err(Error::InvalidPermutation(cols));
    }
    let mut seen = vec![false; cols];
    for &c in order {
        if c >= cols || std::mem::replace(&mut seen[c], true) {
            return Err(Error::InvalidPermutation(cols));
        }
    }
    Ok(())
}

/// Gauss–Jordan elimination visiting columns in `column_order`.
///
/// For each column the first row at or below the current pivot row holding a
/// one becomes the pivot; the column is then cleared in every other row.
pub fn eliminate(m: &F2Matrix, column_order: &[usize]) -> Result<EliminationResult> {
    check_permutation(column_order, m.cols())?;
    Ok(eliminate_unchecked(m, column_order.iter().copied()))
}

/// Elimination in natural column order.
pub fn eliminate_natural(m: &F2Matrix) -> EliminationResult {
    eliminate_unchecked(m, 0..m.cols())
}

pub(crate) fn eliminate_unchecked(
    m: &F2Matrix,
    order: impl Iterator<Item = usize>,
) -> EliminationResult {
    let rows = m.rows();
    let mut work = m.clone();
    let mut transform = F2Matrix::identity(rows);
    let mut pivots = Vec::new();
    for c in order {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| work.get(i, c)) else {
            continue;
        };
        work.swap_rows(r, p);
        transform.swap_rows(r, p);
        for i in 0..rows {
            if i != r && work.get(i, c) {
                work.xor_row_into(r, i);
                transform.xor_row_into(r, i);
            }
        }
        pivots.push(c);
    }
    EliminationResult {
        pivot_columns: pivots,
        row_transform: transform,
        reduced: work,
    }
}

/// Dimension of the row space.
pub fn rank(m: &F2Matrix) -> usize {
    let rows = m.rows();
    let mut work = m.clone();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| work.get(i, c)) else {
            continue;
        };
        work.swap_rows(r, p);
        for i in r + 1..rows {
            if work.get(i, c) {
                work.xor_row_into(r, i);
            }
        }
        r += 1;
    }
    r
}

/// A right inverse `R` with `M · R = 1`, built by back-substitution on the
/// pivot columns of the natural-order elimination.
pub fn right_inverse(m: &F2Matrix) -> Result<F2Matrix> {
    right_inverse_from(m, &eliminate_natural(m))
}

/// Right inverse from an existing elimination of `m`.
pub fn right_inverse_from(m: &F2Matrix, elim: &EliminationResult) -> Result<F2Matrix> {
    let rank = elim.rank();
    if rank < m.rows() {
        return Err(Error::NoRightInverse {
            rank,
            rows: m.rows(),
        });
    }
    // reduced restricted to the pivot columns is the identity, so placing
    // row i of the transform at row pivot_i gives M · R = T⁻¹ · T = 1.
    let mut r = F2Matrix::zeros(m.cols(), m.rows());
    for (i, &p) in elim.pivot_columns.iter().enumerate() {
        r.set_row(p, &elim.row_transform.row(i));
    }
    Ok(r)
}

/// Two-sided inverse of a square matrix.
pub fn inverse(m: &F2Matrix) -> Result<F2Matrix> {
    if m.rows() != m.cols() {
        return Err(shape_err(format!(
            "inverse of non-square {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let elim = eliminate_natural(m);
    if elim.rank() < m.rows() {
        return Err(Error::NoRightInverse {
            rank: elim.rank(),
            rows: m.rows(),
        });
    }
    Ok(elim.row_transform)
}

/// Rows form a basis of `{v : M·v = 0}`, one per non-pivot column.
pub fn kernel_basis(m: &F2Matrix) -> F2Matrix {
    kernel_from(m.cols(), &eliminate_natural(m))
}

fn kernel_from(cols: usize, elim: &EliminationResult) -> F2Matrix {
    let mut is_pivot = vec![false; cols];
    for &p in &elim.pivot_columns {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = F2Matrix::zeros(free.len(), cols);
    for (k, &f) in free.iter().enumerate() {
        basis.set(k, f, true);
        for (i, &p) in elim.pivot_columns.iter().enumerate() {
            if elim.reduced.get(i, f) {
                basis.set(k, p, true);
            }
        }
    }
    basis
}

/// Solve `M_[cols] · y = s` and scatter `y` into a full-length vector
/// supported on `cols`.
pub fn solve_columns(m: &F2Matrix, cols: &[usize], s: &F2Vec) -> Result<F2Vec> {
    if s.len() != m.rows() {
        return Err(shape_err(format!(
            "right-hand side of length {} for {} rows",
            s.len(),
            m.rows()
        )));
    }
    if let Some(&bad) = cols.iter().find(|&&c| c >= m.cols()) {
        return Err(shape_err(format!("column {bad} out of range {}", m.cols())));
    }
    let sub = m.select_columns(cols);
    let elim = eliminate_natural(&sub);
    let t = elim.row_transform.mul_vec_unchecked(s);
    if (elim.rank()..m.rows()).any(|i| t.get(i)) {
        return Err(Error::NoSolution);
    }
    let mut x = F2Vec::zeros(m.cols());
    for (i, &p) in elim.pivot_columns.iter().enumerate() {
        if t.get(i) {
            x.set(cols[p], true);
        }
    }
    Ok(x)
}

/// Any `x` with `M · x = s`.
pub fn solve(m: &F2Matrix, s: &F2Vec) -> Result<F2Vec> {
    let cols: Vec<usize> = (0..m.cols()).collect();
    solve_columns(m, &cols, s)
}

/// Row space held in reduced echelon form, grown one vector at a time.
///
/// Used to pick complements (logical representatives, detector bases) and
/// to test membership without rebuilding an elimination each time.
#[derive(Clone, Debug)]
pub struct RowBasis {
    len: usize,
    rows: Vec<F2Vec>,
    pivots: Vec<usize>,
}

impl RowBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &F2Matrix) -> Self {
        let mut b = Self::new(m.cols());
        for i in 0..m.rows() {
            b.insert(&m.row(i));
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis.
    pub fn reduce(&self, v: &F2Vec) -> F2Vec {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Add `v` if it is independent; returns whether the dimension grew.
    pub fn insert(&mut self, v: &F2Vec) -> bool {
        assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        let Some(p) = r.iter_ones().next() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }
}
