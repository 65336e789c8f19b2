//! Dense matrices over an exact [`FieldDescriptor`] and the elimination kernel
//! shared by the ring, lattice and order modules.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{FieldDescriptor, Scalar};

/// A rectangular array of scalars of one field, stored row-major.
///
/// Matrices are values: every operation returns a new matrix, and equality,
/// ordering and hashing are structural (field, shape, then entries in
/// row-major order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldDescriptor, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn from_fn(field: FieldDescriptor, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, entries }
    }

    /// Builds a matrix from small integers, reduced into the field.
    pub fn from_i64(field: FieldDescriptor, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    /// Parses a matrix from rows of scalar strings.
    pub fn parse(field: FieldDescriptor, rows: &[&[&str]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|s| field.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(field, rows.len(), cols, entries)
    }

    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        Matrix::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn diag(field: FieldDescriptor, diagonal: &[i64]) -> Self {
        let n = diagonal.len();
        Matrix::from_fn(field, n, n, |i, j| field.from_i64(if i == j { diagonal[i] } else { 0 }))
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    /// Copy with a single entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: Scalar) -> Matrix {
        let mut m = self.clone();
        m.entries[i * self.cols + j] = value;
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, k| self.get(i, cols[k]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |k, j| self.get(rows[k], j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j { e.is_one() } else { e.is_zero() }
            }))
    }

    /// Conjugate transpose.
    pub fn star(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Plain transpose, without conjugation.
    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.is_square() && self.star() == *self
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && &(self * self) == self
    }

    pub fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn same_shape(&self, other: &Matrix) -> Result<()> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} matrix is not square", self.rows, self.cols)));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self * rhs)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { entries: self.entries.iter().map(|e| e * s).collect(), ..self.clone() }
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { rhs.get(i, j - self.cols).clone() }
        })
    }

    /// Reduced row echelon form and its pivot columns.
    ///
    /// The pivot of each column is the first nonzero entry at or below the
    /// current row, so ties always go to the lowest row index.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.entries[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.entries[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{z : self·z = 0}` as the columns of a `cols × k` matrix.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Matrix::from_fn(self.field, self.cols, free.len(), |i, k| {
            let f = free[k];
            if i == f {
                self.field.one()
            } else if let Some(row) = pivots.iter().position(|&p| p == i) {
                -r.get(row, f)
            } else {
                self.field.zero()
            }
        })
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Whether `self·x = rhs` has a solution, checked column by column of `rhs`.
    pub fn solvable(&self, rhs: &Matrix) -> bool {
        let rank = self.rank();
        (0..rhs.cols).all(|j| self.hstack(&rhs.column(j)).rank() == rank)
    }

    /// Row-major list of entry strings in the scalar grammar.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|s| s.to_string()).collect()).collect()
    }

    /// Compact single-line label, e.g. `[[1,0],[1,0]]`.
    pub fn label(&self) -> String {
        let rows: Vec<String> = self.to_strings().into_iter().map(|r| format!("[{}]", r.join(","))).collect();
        format!("[{}]", rows.join(","))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix add shape mismatch");
        Matrix {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sub shape mismatch");
        Matrix {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
            ..self.clone()
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { entries: self.entries.iter().map(|a| -a).collect(), ..self.clone() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    /// Panics on a shape mismatch; use [`Matrix::checked_mul`] for untrusted input.
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix mul shape mismatch");
        let field = self.field;
        Matrix::from_fn(field, self.rows, rhs.cols, |i, j| {
            let mut acc = field.zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = &acc + &(a * rhs.get(k, j));
            }
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QI: FieldDescriptor = FieldDescriptor::GaussianRationals;

    #[test]
    fn star_examples() {
        let a = Matrix::parse(QI, &[&["1+1i", "0"], &["2", "0+3i"]]).unwrap();
        let expected = Matrix::parse(QI, &[&["1-1i", "2"], &["0", "0-3i"]]).unwrap();
        assert_eq!(a.star(), expected);
        assert_eq!(a.star().star(), a);
        let r = Matrix::from_i64(QI, &[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(r.star().shape(), (3, 2));
    }

    #[test]
    fn rref_and_nullspace() {
        let a = Matrix::from_i64(QI, &[&[1, 0], &[1, 0]]);
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(r, Matrix::from_i64(QI, &[&[1, 0], &[0, 0]]));
        assert_eq!(a.nullspace(), Matrix::from_i64(QI, &[&[0], &[1]]));
        assert_eq!(Matrix::identity(QI, 3).nullspace().cols(), 0);
        assert_eq!(Matrix::zeros(QI, 2, 2).nullspace(), Matrix::identity(QI, 2));
    }

    #[test]
    fn inverse_and_solvable() {
        let a = Matrix::from_i64(QI, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(Matrix::from_i64(QI, &[&[1, 2], &[2, 4]]).inverse().is_none());
        let b = Matrix::from_i64(QI, &[&[1, 0], &[0, 0]]);
        assert!(b.solvable(&Matrix::from_i64(QI, &[&[0, 1], &[0, 0]])));
        assert!(!b.solvable(&Matrix::from_i64(QI, &[&[0, 0], &[0, 1]])));
    }

    #[test]
    fn checked_ops_reject_bad_shapes() {
        let a = Matrix::zeros(QI, 2, 3);
        assert!(matches!(a.checked_mul(&a), Err(Error::ShapeMismatch(_))));
        let f3 = FieldDescriptor::prime(3).unwrap();
        assert!(matches!(a.checked_add(&Matrix::zeros(f3, 2, 3)), Err(Error::FieldMismatch(..))));
        assert!(Matrix::new(QI, 2, 2, vec![QI.zero()]).is_err());
    }
}
