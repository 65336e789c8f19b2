//! Structure of the right star order `≤c*` (`a ≤ b` iff `b a″ = a = a b″`).
//!
//! For every `x` the maps `a ↦ a″` and `e ↦ x e` are mutually inverse order
//! isomorphisms between the initial segment `[0, x]` of the ring and the
//! segment `[0, x″]` of the projection lattice. Meets and joins inside a
//! segment are therefore `x(a″ ∧ b″)` and `x(a″ ∨ b″)`, and both are also the
//! meet and join in the whole ring.

use crate::error::{Error, Result};
use crate::harness::{enumerate_ring, RingUniverse};
use crate::matrix::Matrix;
use crate::orders::star_le;
use crate::projections::{proj_join, proj_le, proj_meet, Projection};
use crate::star_ring::{primes, RingDescriptor, Side};

fn right_le(a: &Matrix, b: &Matrix) -> Result<bool> {
    star_le(a, b, Side::Right)
}

fn require_below(a: &Matrix, x: &Matrix, what: &str) -> Result<()> {
    if right_le(a, x)? {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("{what} = {a} is not below {x}")))
    }
}

/// `a ↦ a″`.
pub fn phi(a: &Matrix) -> Result<Projection> {
    Ok(primes(a)?.right_double)
}

/// `e ↦ x e`, defined for `e ≤ x″`.
pub fn psi(x: &Matrix, e: &Projection) -> Result<Matrix> {
    x.same_shape(e.matrix())?;
    if !proj_le(e, &phi(x)?)? {
        return Err(Error::PreconditionViolated(format!("{} is not below x″", e.matrix())));
    }
    Ok(x * e.matrix())
}

/// The initial segment `[0, x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub top: Matrix,
    pub ring: RingDescriptor,
    top_double: Projection,
}

impl Interval {
    pub fn new(top: Matrix) -> Result<Interval> {
        let ring = RingDescriptor::of(&top)?.require_proper()?;
        let top_double = phi(&top)?;
        Ok(Interval { top, ring, top_double })
    }

    pub fn contains(&self, a: &Matrix) -> Result<bool> {
        right_le(a, &self.top)
    }

    fn require(&self, a: &Matrix) -> Result<Projection> {
        require_below(a, &self.top, "element")?;
        phi(a)
    }

    /// `x(a″ ∧ b″)`.
    pub fn meet(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        let (ea, eb) = (self.require(a)?, self.require(b)?);
        Ok(&self.top * proj_meet(&ea, &eb)?.matrix())
    }

    /// `x(a″ ∨ b″)`.
    pub fn join(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        let (ea, eb) = (self.require(a)?, self.require(b)?);
        Ok(&self.top * proj_join(&ea, &eb)?.matrix())
    }

    /// `x - a`, the orthocomplement of `a` in `[0, x]`.
    pub fn ortho(&self, a: &Matrix) -> Result<Matrix> {
        self.require(a)?;
        Ok(&self.top - a)
    }

    /// `{x e : e ∈ P, e ≤ x″}`, sorted.
    pub fn elements(&self) -> Result<Vec<Matrix>> {
        let mut out = Vec::new();
        for e in ring_projections(&self.ring)? {
            if proj_le(&e, &self.top_double)? {
                out.push(&self.top * e.matrix());
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Meet of `a` and `b` computed inside the segment below `x`.
pub fn segment_meet(x: &Matrix, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    Interval::new(x.clone())?.meet(a, b)
}

/// Join of `a` and `b` computed inside the segment below `x`.
pub fn segment_join(x: &Matrix, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    Interval::new(x.clone())?.join(a, b)
}

pub fn segment_ortho(x: &Matrix, a: &Matrix) -> Result<Matrix> {
    Interval::new(x.clone())?.ortho(a)
}

/// `a(a″ ∧ b″)`, the meet of two elements that have a common upper bound.
///
/// The bound itself is not needed, but boundedness forces
/// `a(a″ ∧ b″) = b(a″ ∧ b″)`; a pair violating that cannot be bounded and is
/// rejected.
pub fn bounded_meet(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.same_shape(b)?;
    let m = proj_meet(&phi(a)?, &phi(b)?)?;
    let via_a = a * m.matrix();
    let via_b = b * m.matrix();
    if via_a != via_b {
        return Err(Error::PreconditionViolated(format!("{a} and {b} have no common upper bound")));
    }
    Ok(via_a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundVerdict {
    Exists(Matrix),
    None,
    /// Neither trivial witness works and the ring cannot be searched.
    Unknown,
}

/// Whether `a` and `b` have a common upper bound under `≤c*`.
///
/// `b` (when `a ≤ b`) and `a` (when `b ≤ a`) are tried first; beyond that,
/// enumerable rings are searched exhaustively and anything else is
/// [`BoundVerdict::Unknown`].
pub fn upper_bound_exists(a: &Matrix, b: &Matrix) -> Result<BoundVerdict> {
    a.same_shape(b)?;
    let ring = RingDescriptor::of(a)?.require_proper()?;
    if right_le(a, b)? {
        return Ok(BoundVerdict::Exists(b.clone()));
    }
    if right_le(b, a)? {
        return Ok(BoundVerdict::Exists(a.clone()));
    }
    if !ring.enumerable {
        return Ok(BoundVerdict::Unknown);
    }
    for y in enumerate_ring(&RingUniverse::exhaustive(ring)?)? {
        if right_le(a, &y)? && right_le(b, &y)? {
            return Ok(BoundVerdict::Exists(y));
        }
    }
    Ok(BoundVerdict::None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    /// A strictly larger element.
    NotMaximal(Matrix),
    Unknown,
}

/// Whether `a` has no strict `≤c*`-successor.
///
/// Enumerable rings are searched. Otherwise left invertible elements are
/// maximal, and a projection `e ≠ 1` lies strictly below `1`; anything else is
/// [`Maximality::Unknown`].
pub fn is_maximal(a: &Matrix) -> Result<Maximality> {
    let ring = RingDescriptor::of(a)?.require_proper()?;
    if ring.enumerable {
        for z in enumerate_ring(&RingUniverse::exhaustive(ring)?)? {
            if z != *a && right_le(a, &z)? {
                return Ok(Maximality::NotMaximal(z));
            }
        }
        return Ok(Maximality::Maximal);
    }
    if a.rank() == ring.size {
        return Ok(Maximality::Maximal);
    }
    let one = ring.one();
    if right_le(a, &one)? {
        return Ok(Maximality::NotMaximal(one));
    }
    Ok(Maximality::Unknown)
}

/// All projections of an enumerable ring, sorted.
pub fn ring_projections(ring: &RingDescriptor) -> Result<Vec<Projection>> {
    Ok(enumerate_ring(&RingUniverse::exhaustive(*ring)?)?
        .filter_map(|m| Projection::certify(m).ok())
        .collect())
}

/// `[0, x]` of an enumerable ring, computed through the isomorphism with `[0, x″]`.
pub fn initial_segment(x: &Matrix) -> Result<Vec<Matrix>> {
    let ring = RingDescriptor::of(x)?;
    if !ring.enumerable {
        return Err(Error::NotEnumerable(ring.to_string()));
    }
    Interval::new(x.clone())?.elements()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    fn f3() -> FieldDescriptor {
        FieldDescriptor::prime(3).unwrap()
    }

    const QI: FieldDescriptor = FieldDescriptor::GaussianRationals;

    fn proj(m: Matrix) -> Projection {
        Projection::certify(m).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert!(phi(&Matrix::zeros(QI, 2, 2)).unwrap().matrix().is_zero());
        let e = Matrix::parse(QI, &[&["1/2", "1/2"], &["1/2", "1/2"]]).unwrap();
        assert_eq!(*phi(&e).unwrap().matrix(), e);
        assert_eq!(*phi(&Matrix::from_i64(QI, &[&[1, 0], &[1, 0]])).unwrap().matrix(), Matrix::diag(QI, &[1, 0]));
    }

    #[test]
    fn psi_examples() {
        let x = Matrix::from_i64(QI, &[&[1, 2], &[2, 4]]);
        assert_eq!(psi(&x, &phi(&x).unwrap()).unwrap(), x);
        assert!(psi(&x, &Projection::zero(QI, 2)).unwrap().is_zero());
        assert!(matches!(
            psi(&x, &proj(Matrix::diag(QI, &[1, 0]))),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn segment_examples() {
        let one = Matrix::identity(QI, 2);
        let e = Matrix::diag(QI, &[1, 0]);
        let f = Matrix::parse(QI, &[&["1/2", "1/2"], &["1/2", "1/2"]]).unwrap();
        assert!(segment_meet(&one, &e, &f).unwrap().is_zero());
        assert!(segment_join(&one, &e, &f).unwrap().is_identity());
        let x = Matrix::from_i64(QI, &[&[1, 2], &[3, 4]]);
        let b = psi(&x, &proj(e.clone())).unwrap();
        assert_eq!(segment_join(&x, &Matrix::zeros(QI, 2, 2), &b).unwrap(), b);
        assert_eq!(segment_ortho(&x, &Matrix::zeros(QI, 2, 2)).unwrap(), x);
        assert!(segment_ortho(&x, &x).unwrap().is_zero());
        assert_eq!(segment_ortho(&one, &e).unwrap(), Matrix::diag(QI, &[0, 1]));
        assert!(matches!(segment_meet(&e, &one, &e), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn bounded_meet_examples() {
        let a = Matrix::from_i64(QI, &[&[1, 2], &[0, 1]]);
        assert_eq!(bounded_meet(&a, &a).unwrap(), a);
        let e = Matrix::diag(QI, &[1, 0]);
        let f = Matrix::diag(QI, &[1, 1]);
        assert_eq!(bounded_meet(&e, &f).unwrap(), e);
    }

    #[test]
    fn upper_bounds() {
        let a = Matrix::from_i64(f3(), &[&[1, 2], &[0, 1]]);
        assert_eq!(upper_bound_exists(&a, &a).unwrap(), BoundVerdict::Exists(a.clone()));
        let e = Matrix::diag(f3(), &[1, 0]);
        let f = Matrix::from_i64(f3(), &[&[2, 2], &[2, 2]]);
        let BoundVerdict::Exists(y) = upper_bound_exists(&e, &f).unwrap() else { panic!() };
        assert!(right_le(&e, &y).unwrap() && right_le(&f, &y).unwrap());
        // two distinct invertible elements are both maximal
        let b = Matrix::from_i64(f3(), &[&[1, 0], &[0, 2]]);
        assert_eq!(upper_bound_exists(&a, &b).unwrap(), BoundVerdict::None);
        let qa = Matrix::from_i64(QI, &[&[1, 2], &[0, 1]]);
        let qb = Matrix::from_i64(QI, &[&[1, 0], &[0, 2]]);
        assert_eq!(upper_bound_exists(&qa, &qb).unwrap(), BoundVerdict::Unknown);
    }

    #[test]
    fn maximality() {
        assert_eq!(is_maximal(&Matrix::identity(QI, 3)).unwrap(), Maximality::Maximal);
        assert_eq!(is_maximal(&Matrix::identity(f3(), 2)).unwrap(), Maximality::Maximal);
        assert!(matches!(is_maximal(&Matrix::zeros(f3(), 2, 2)).unwrap(), Maximality::NotMaximal(_)));
        assert!(matches!(is_maximal(&Matrix::zeros(QI, 2, 2)).unwrap(), Maximality::NotMaximal(_)));
        assert_eq!(is_maximal(&Matrix::from_i64(QI, &[&[1, 1], &[1, 1]])).unwrap(), Maximality::Unknown);
    }

    #[test]
    fn initial_segments() {
        assert_eq!(initial_segment(&Matrix::zeros(f3(), 2, 2)).unwrap(), vec![Matrix::zeros(f3(), 2, 2)]);
        let ring = RingDescriptor::fp(3, 2).unwrap();
        let p: Vec<Matrix> = ring_projections(&ring).unwrap().into_iter().map(Projection::into_matrix).collect();
        assert_eq!(p.len(), 6);
        assert_eq!(initial_segment(&Matrix::identity(f3(), 2)).unwrap(), p);
        assert!(matches!(initial_segment(&Matrix::identity(QI, 2)), Err(Error::NotEnumerable(_))));
    }
}
