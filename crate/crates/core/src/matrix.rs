//! Dense matrices over a [`Field`] with exact elimination.
//!
//! Row reduction always takes the first row with a nonzero entry in the pivot
//! column, so `rref` output is deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<_> = self.row(r).iter().map(|&x| self.field.format_elem(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, found: entries.len() });
        }
        for &x in &entries {
            field.check(x)?;
        }
        Ok(Matrix { field: field.clone(), rows, cols, entries })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch { expected: cols, found: bad.len() });
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Elem) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, entries }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, entries: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::from_fn(field, n, n, |r, c| if r == c { Elem::ONE } else { Elem::ZERO })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = &self.field;
        Ok(Matrix::from_fn(f, self.rows, other.cols, |r, c| {
            f.sum((0..self.cols).map(|i| f.mul(self.get(r, i), other.get(i, c))))
        }))
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, found: v.len() });
        }
        let f = &self.field;
        Ok((0..self.cols)
            .map(|c| f.sum(v.iter().enumerate().map(|(r, &x)| f.mul(x, self.get(r, c)))))
            .collect())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::IndexOutOfRange { index: r, bound: self.rows });
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange { index: c, bound: self.cols });
        }
        Ok(Matrix::from_fn(&self.field, rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c])
        }))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix> {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { op: "vstack", left: self.shape(), right: other.shape() });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    fn reduce(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, p);
            let inv = f.inv(self.get(lead, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let x = f.mul(self.get(lead, j), inv);
                self.set(lead, j, x);
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let x = f.sub(self.get(r, j), f.mul(factor, self.get(lead, j)));
                    self.set(r, j, x);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form, same shape, zero rows at the bottom.
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        m.reduce();
        m
    }

    /// Nonzero rows of the rref: a canonical basis of the row space.
    pub fn row_basis(&self) -> Matrix {
        let mut m = self.clone();
        let rank = m.reduce().len();
        m.entries.truncate(rank * m.cols);
        m.rows = rank;
        m
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(det_in_place(&self.field, &mut self.entries.clone(), self.rows))
    }

    /// Basis of {v : M v^T = 0}, one vector per row.
    pub fn nullspace(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.reduce();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, Elem::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, f.neg(m.get(r, fc)));
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::from_fn(f, n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c)
            } else if c - n == r {
                Elem::ONE
            } else {
                Elem::ZERO
            }
        });
        let pivots = aug.reduce();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let right: Vec<usize> = (n..2 * n).collect();
        let all: Vec<usize> = (0..n).collect();
        aug.submatrix(&all, &right).map(Some)
    }
}

/// Determinant of an n x n row-major buffer, destroyed in the process.
pub(crate) fn det_in_place(f: &Field, a: &mut [Elem], n: usize) -> Elem {
    let mut det = Elem::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
            return Elem::ZERO;
        };
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            det = f.neg(det);
        }
        let pivot = a[c * n + c];
        det = f.mul(det, pivot);
        let inv = f.inv(pivot).expect("pivot is nonzero");
        for r in c + 1..n {
            let factor = f.mul(a[r * n + c], inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
            }
        }
    }
    det
}

/// True iff the two matrices span the same row space.
pub fn row_space_equal(a: &Matrix, b: &Matrix) -> Result<bool> {
    a.same_field(b)?;
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch { op: "row_space_equal", left: a.shape(), right: b.shape() });
    }
    Ok(a.row_basis() == b.row_basis())
}
