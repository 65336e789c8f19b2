//! The orthomodular lattice `P` of projections (self-adjoint idempotents).
//!
//! Meets and joins are computed from column spaces by elimination, never
//! through Moore-Penrose inverses, so the lattice can serve as an oracle for
//! the prime operations.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::FieldDescriptor;

/// A square matrix `e` with `e·e = e = e*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Projection(Matrix);

impl Projection {
    pub fn certify(a: Matrix) -> Result<Projection> {
        a.require_square()?;
        if !a.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        if !a.is_self_adjoint() {
            return Err(Error::NotSelfAdjoint);
        }
        Ok(Projection(a))
    }

    pub fn zero(field: FieldDescriptor, n: usize) -> Projection {
        Projection(Matrix::zeros(field, n, n))
    }

    pub fn one(field: FieldDescriptor, n: usize) -> Projection {
        Projection(Matrix::identity(field, n))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    /// `e ≤ f`, see [`proj_le`].
    pub fn le(&self, other: &Projection) -> Result<bool> {
        proj_le(self, other)
    }

    pub fn meet(&self, other: &Projection) -> Result<Projection> {
        proj_meet(self, other)
    }

    pub fn join(&self, other: &Projection) -> Result<Projection> {
        proj_join(self, other)
    }

    pub fn ortho(&self) -> Projection {
        proj_ortho(self)
    }
}

impl AsRef<Matrix> for Projection {
    fn as_ref(&self) -> &Matrix {
        &self.0
    }
}

fn same_ring(e: &Projection, f: &Projection) -> Result<()> {
    e.0.same_shape(&f.0)
}

/// `e ≤ f`, decided as `e·f = e` and cross-checked against `f·e = e`.
pub fn proj_le(e: &Projection, f: &Projection) -> Result<bool> {
    same_ring(e, f)?;
    let right = &e.0 * &f.0 == e.0;
    let left = &f.0 * &e.0 == e.0;
    if right != left {
        return Err(Error::InternalDisagreement(format!("ef = e is {right} but fe = e is {left}")));
    }
    Ok(right)
}

/// Independent columns of `a` spanning its column space: the pivot columns
/// of its row echelon form.
pub fn column_space_basis(a: &Matrix) -> Matrix {
    let (_, pivots) = a.rref();
    a.select_columns(&pivots)
}

/// Orthogonal projection `B (B*B)⁻¹ B*` onto the span of the columns of `basis`.
///
/// The columns must be independent; the Gram matrix `B*B` is then invertible
/// over any proper field.
pub fn projection_onto(basis: &Matrix) -> Result<Projection> {
    let n = basis.rows();
    if basis.cols() == 0 {
        return Ok(Projection::zero(basis.field(), n));
    }
    let b_star = basis.star();
    let gram_inv = (&b_star * basis).inverse().ok_or(Error::SingularGram)?;
    let p = &(basis * &gram_inv) * &b_star;
    debug_assert!(p.is_idempotent() && p.is_self_adjoint());
    Ok(Projection(p))
}

/// Basis of `ran(a) ∩ ran(b)` for column-independent `a`, `b`.
///
/// A kernel vector `(u, v)` of `[a | -b]` gives a common element `a·u = b·v`.
fn range_intersection(a: &Matrix, b: &Matrix) -> Matrix {
    if a.cols() == 0 || b.cols() == 0 {
        return Matrix::zeros(a.field(), a.rows(), 0);
    }
    let kernel = a.hstack(&-b).nullspace();
    let top: Vec<usize> = (0..a.cols()).collect();
    column_space_basis(&(a * &kernel.select_rows(&top)))
}

/// `e ∧ f`: the projection onto `ran(e) ∩ ran(f)`.
pub fn proj_meet(e: &Projection, f: &Projection) -> Result<Projection> {
    same_ring(e, f)?;
    projection_onto(&range_intersection(&column_space_basis(&e.0), &column_space_basis(&f.0)))
}

/// `e ∨ f`: the projection onto `ran(e) + ran(f)`.
///
/// Checked against De Morgan, `e ∨ f = (e⊥ ∧ f⊥)⊥`.
pub fn proj_join(e: &Projection, f: &Projection) -> Result<Projection> {
    same_ring(e, f)?;
    let join = projection_onto(&column_space_basis(&e.0.hstack(&f.0)))?;
    let de_morgan = proj_ortho(&proj_meet(&proj_ortho(e), &proj_ortho(f))?);
    if join != de_morgan {
        return Err(Error::InternalDisagreement(format!(
            "join {} differs from De Morgan dual {}",
            join.0, de_morgan.0
        )));
    }
    Ok(join)
}

/// `e⊥ = 1 - e`.
pub fn proj_ortho(e: &Projection) -> Projection {
    Projection(&Matrix::identity(e.0.field(), e.size()) - &e.0)
}
