//! Dense exact linear algebra over any supported field: rank, nullspace,
//! solve, and inversion by Gaussian elimination with deterministic pivoting
//! (first nonzero entry in column order), so that derived bases and reports
//! are reproducible byte for byte.

use crate::error::QciError;
use crate::scalar::{FieldDescriptor, FieldScalar};

/// A dense row-major matrix whose entries all share one field descriptor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    desc: FieldDescriptor,
    entries: Vec<FieldScalar>,
}

impl Matrix {
    /// Build from row-major entries. Fails unless `entries.len() == rows * cols`
    /// and every entry lies in the same field.
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldScalar>) -> Result<Self, QciError> {
        if entries.len() != rows * cols {
            return Err(QciError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let desc = match entries.first() {
            Some(e) => e.descriptor(),
            None => {
                return Err(QciError::DimensionMismatch(
                    "empty matrices are not supported".into(),
                ))
            }
        };
        if let Some(bad) = entries.iter().find(|e| e.descriptor() != desc) {
            return Err(QciError::DescriptorMismatch {
                left: desc.to_string(),
                right: bad.descriptor().to_string(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            desc,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        desc: FieldDescriptor,
        mut f: impl FnMut(usize, usize) -> FieldScalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.descriptor(), desc, "entry field differs from matrix field");
                entries.push(e);
            }
        }
        Matrix {
            rows,
            cols,
            desc,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize, desc: FieldDescriptor) -> Self {
        Self::from_fn(rows, cols, desc, |_, _| FieldScalar::zero(desc))
    }

    pub fn identity(n: usize, desc: FieldDescriptor) -> Self {
        Self::from_fn(n, n, desc, |r, c| {
            if r == c {
                FieldScalar::one(desc)
            } else {
                FieldScalar::zero(desc)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn entry(&self, r: usize, c: usize) -> &FieldScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, v: FieldScalar) {
        assert_eq!(v.descriptor(), self.desc, "entry field differs from matrix field");
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows, self.desc)
    }

    /// Reduced row echelon form together with the pivot column indices.
    fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.entry(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m
                .entry(row, col)
                .inv()
                .expect("pivot entry is nonzero");
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.entry(r, col).is_zero() {
                    let factor = m.entry(r, col).clone();
                    m.sub_scaled_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &FieldScalar) {
        for c in 0..self.cols {
            let v = self.entry(r, c).mul_raw(factor);
            self.entries[r * self.cols + c] = v;
        }
    }

    /// row_r -= factor * row_src
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &FieldScalar) {
        for c in 0..self.cols {
            let v = self
                .entry(r, c)
                .sub_raw(&self.entry(src, c).mul_raw(factor));
            self.entries[r * self.cols + c] = v;
        }
    }

    /// Exact rank via Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel in echelon-normalized form: one vector per
    /// free column, taken in ascending column order, with a 1 in the free
    /// coordinate.
    pub fn nullspace(&self) -> Vec<Vec<FieldScalar>> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![FieldScalar::zero(self.desc); self.cols];
            v[free] = FieldScalar::one(self.desc);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = rref.entry(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[FieldScalar]) -> Result<Option<Vec<FieldScalar>>, QciError> {
        if b.len() != self.rows {
            return Err(QciError::DimensionMismatch(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        if let Some(bad) = b.iter().find(|e| e.descriptor() != self.desc) {
            return Err(QciError::DescriptorMismatch {
                left: self.desc.to_string(),
                right: bad.descriptor().to_string(),
            });
        }
        let aug = Matrix::from_fn(self.rows, self.cols + 1, self.desc, |r, c| {
            if c < self.cols {
                self.entry(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![FieldScalar::zero(self.desc); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.entry(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// The inverse, or `None` when singular. Non-square input is an error.
    pub fn invert(&self) -> Result<Option<Matrix>, QciError> {
        if self.rows != self.cols {
            return Err(QciError::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, self.desc, |r, c| {
            if c < n {
                self.entry(r, c).clone()
            } else if c - n == r {
                FieldScalar::one(self.desc)
            } else {
                FieldScalar::zero(self.desc)
            }
        });
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(n, n, self.desc, |r, c| {
            rref.entry(r, n + c).clone()
        })))
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, QciError> {
        if self.cols != rhs.rows {
            return Err(QciError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.desc != rhs.desc {
            return Err(QciError::DescriptorMismatch {
                left: self.desc.to_string(),
                right: rhs.desc.to_string(),
            });
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, self.desc, |r, c| {
            let mut acc = FieldScalar::zero(self.desc);
            for k in 0..self.cols {
                acc = acc.add_raw(&self.entry(r, k).mul_raw(rhs.entry(k, c)));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[FieldScalar]) -> Result<Vec<FieldScalar>, QciError> {
        if v.len() != self.cols {
            return Err(QciError::DimensionMismatch(format!(
                "vector has {} entries, matrix has {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = FieldScalar::zero(self.desc);
                for (c, vc) in v.iter().enumerate() {
                    acc = acc.add_raw(&self.entry(r, c).mul_raw(vc));
                }
                acc
            })
            .collect())
    }

    /// Matrix power by repeated multiplication; `pow(0)` is the identity.
    pub fn pow(&self, e: u32) -> Result<Matrix, QciError> {
        if self.rows != self.cols {
            return Err(QciError::DimensionMismatch(format!(
                "cannot raise a {}x{} matrix to a power",
                self.rows, self.cols
            )));
        }
        let mut acc = Matrix::identity(self.rows, self.desc);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}
