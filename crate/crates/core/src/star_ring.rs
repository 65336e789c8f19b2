//! Matrix *-rings: the involution, properness, Moore-Penrose inversion and
//! the Rickart prime operations.
//!
//! For a square matrix `a` over a proper descriptor the four primes are
//!
//! ```text
//! left prime    a‵  = 1 - a a†      left double   a‵‵ = a a†
//! right prime   a′  = 1 - a† a      right double  a″  = a† a
//! ```
//!
//! `a‵` generates the left annihilator of `a` (`y a = 0` iff `y a‵ = y`) and
//! `a′` the right annihilator (`a z = 0` iff `a′ z = z`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::projections::{proj_ortho, Projection};
use crate::scalars::FieldDescriptor;

/// Which side a one-sided notion refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("side must be left or right, got '{s}'"))),
        }
    }
}

/// A concrete ring of `size × size` matrices over a field, with conjugate
/// transpose as involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    pub field: FieldDescriptor,
    pub size: usize,
    /// Whether the descriptor is one of the admitted proper *-rings.
    pub proper: bool,
    pub enumerable: bool,
    /// `p^(n²)` for prime fields, when it fits in a `u128`.
    pub cardinality: Option<u128>,
}

/// Descriptors for which properness is certified.
pub const ADMITTED: &str = "Qi:n=<n> for any n >= 1; M1(F<p>) and M2(F<p>) for primes p ≡ 3 (mod 4)";

impl RingDescriptor {
    pub fn new(field: FieldDescriptor, size: usize) -> Result<Self> {
        let field = field.validate()?;
        if size == 0 {
            return Err(Error::ShapeMismatch("ring size must be positive".into()));
        }
        let (proper, enumerable, cardinality) = match field {
            FieldDescriptor::GaussianRationals => (true, false, None),
            FieldDescriptor::PrimeField { p } => {
                let card = u32::try_from(size * size).ok().and_then(|e| (p as u128).checked_pow(e));
                (p % 4 == 3 && size <= 2, true, card)
            }
        };
        Ok(RingDescriptor { field, size, proper, enumerable, cardinality })
    }

    pub fn qi(size: usize) -> Self {
        RingDescriptor::new(FieldDescriptor::GaussianRationals, size).expect("valid size")
    }

    pub fn fp(p: u64, size: usize) -> Result<Self> {
        RingDescriptor::new(FieldDescriptor::prime(p)?, size)
    }

    /// The ring a square matrix belongs to.
    pub fn of(a: &Matrix) -> Result<Self> {
        a.require_square()?;
        RingDescriptor::new(a.field(), a.rows())
    }

    pub fn require_proper(self) -> Result<Self> {
        if self.proper {
            Ok(self)
        } else {
            Err(Error::ImproperDescriptor(self.to_string()))
        }
    }

    pub fn zero(&self) -> Matrix {
        Matrix::zeros(self.field, self.size, self.size)
    }

    pub fn one(&self) -> Matrix {
        Matrix::identity(self.field, self.size)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            FieldDescriptor::GaussianRationals => write!(f, "Qi:n={}", self.size),
            FieldDescriptor::PrimeField { p } => write!(f, "M{}(F{p})", self.size),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    /// `M<n>(F<p>)` or `Qi:n=<n>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("ring '{s}' is not of the form M<n>(F<p>) or Qi:n=<n>"));
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        if let Some(n) = s.strip_prefix("Qi:n=") {
            return RingDescriptor::new(FieldDescriptor::GaussianRationals, num(n)? as usize);
        }
        let rest = s.strip_prefix('M').ok_or_else(bad)?;
        let (n, field) = rest.split_once("(F").ok_or_else(bad)?;
        let p = field.strip_suffix(')').ok_or_else(bad)?;
        RingDescriptor::new(FieldDescriptor::prime(num(p)?)?, num(n)? as usize)
    }
}

/// Why a descriptor's involution is proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `trace(x*x) = Σ |x_ij|²` is positive definite over `Q(i)`.
    PositiveDefinite,
    /// `x² + y²` has no nontrivial zero over `F_p` when `p ≡ 3 (mod 4)`, so
    /// every column of a nonzero `x` has nonzero square norm for `n ≤ 2`.
    Anisotropic { p: u64 },
    /// No isotropic vector exists among all `count` nonzero vectors.
    ExhaustiveSearch { count: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProperVerdict {
    Certified(Certificate),
    /// A nonzero `witness` with `witness* · witness = 0`.
    Refuted { witness: Matrix },
}

/// Largest number of vectors [`check_proper`] scans before giving up.
pub const PROPER_SEARCH_LIMIT: u64 = 1 << 24;

/// Certifies or refutes properness of the involution on `d`.
///
/// A nonzero `x` with `x*x = 0` exists iff some nonzero vector `v` has
/// `v*v = 0` (the diagonal of `x*x` holds the square norms of the columns
/// of `x`, and an isotropic `v` gives `x = v·(1, …, 1)`). Non-admitted prime
/// field descriptors are decided by scanning vectors in lexicographic order.
pub fn check_proper(d: &RingDescriptor) -> Result<ProperVerdict> {
    match d.field {
        FieldDescriptor::GaussianRationals => Ok(ProperVerdict::Certified(Certificate::PositiveDefinite)),
        FieldDescriptor::PrimeField { p } if d.proper => Ok(ProperVerdict::Certified(Certificate::Anisotropic { p })),
        FieldDescriptor::PrimeField { p } => {
            // total number of vectors, None when it exceeds the scan limit
            let count = u32::try_from(d.size)
                .ok()
                .and_then(|n| p.checked_pow(n))
                .filter(|&c| c <= PROPER_SEARCH_LIMIT);
            let n = d.size;
            let mut digits = vec![0u64; n];
            for _ in 1..count.unwrap_or(PROPER_SEARCH_LIMIT) {
                increment(&mut digits, p);
                let norm = digits.iter().fold(0u64, |acc, &v| (acc + v * v) % p);
                if norm == 0 {
                    let witness = Matrix::from_fn(d.field, n, n, |i, _| d.field.from_i64(digits[i] as i64));
                    return Ok(ProperVerdict::Refuted { witness });
                }
            }
            match count {
                Some(c) => Ok(ProperVerdict::Certified(Certificate::ExhaustiveSearch { count: c - 1 })),
                None => Err(Error::NotDecidable(d.to_string())),
            }
        }
    }
}

/// Lexicographic successor with the last digit varying fastest.
fn increment(digits: &mut [u64], base: u64) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return;
        }
        *d = 0;
    }
}

/// Full-rank factorization `a = f·g`.
///
/// `f` holds the pivot columns of `a` (full column rank) and `g` the nonzero
/// rows of the reduced row echelon form (full row rank). The zero matrix
/// factors through `r = 0`.
pub fn rank_factorize(a: &Matrix) -> (Matrix, Matrix) {
    let (r, pivots) = a.rref();
    let f = a.select_columns(&pivots);
    let rows: Vec<usize> = (0..pivots.len()).collect();
    let g = r.select_rows(&rows);
    (f, g)
}

/// Moore-Penrose inverse `a† = g*(f* a g*)⁻¹ f*` from a full-rank
/// factorization `a = f g`.
///
/// The core `f* a g* = (f* f)(g g*)` is invertible whenever the involution is
/// proper; over an improper field this may fail with [`Error::SingularCore`].
pub fn pinv(a: &Matrix) -> Result<Matrix> {
    let (f, g) = rank_factorize(a);
    if f.cols() == 0 {
        return Ok(Matrix::zeros(a.field(), a.cols(), a.rows()));
    }
    let f_star = f.star();
    let g_star = g.star();
    let core = &(&f_star * a) * &g_star;
    let core_inv = core.inverse().ok_or(Error::SingularCore)?;
    Ok(&(&g_star * &core_inv) * &f_star)
}

/// The four Rickart primes `(a‵, a′, a‵‵, a″)` of a square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeQuadruple {
    pub left_prime: Projection,
    pub right_prime: Projection,
    pub left_double: Projection,
    pub right_double: Projection,
}

/// Primes of `a` through its Moore-Penrose inverse.
pub fn primes(a: &Matrix) -> Result<PrimeQuadruple> {
    RingDescriptor::of(a)?.require_proper()?;
    let dagger = pinv(a)?;
    primes_from_pinv(a, &dagger)
}

/// Primes of `a` given `a†`; useful when the inverse is already cached.
pub fn primes_from_pinv(a: &Matrix, dagger: &Matrix) -> Result<PrimeQuadruple> {
    let left_double = Projection::certify(a * dagger)?;
    let right_double = Projection::certify(dagger * a)?;
    Ok(PrimeQuadruple {
        left_prime: proj_ortho(&left_double),
        right_prime: proj_ortho(&right_double),
        left_double,
        right_double,
    })
}

/// Basis of an annihilator of `a` by plain nullspace elimination, without
/// going through `a†`.
///
/// For [`Side::Left`] the basis vectors `y` (with `y·a = 0`) are the rows of
/// the result; for [`Side::Right`] the vectors `z` (with `a·z = 0`) are its
/// columns.
pub fn annihilator_oracle(a: &Matrix, side: Side) -> Result<Matrix> {
    a.require_square()?;
    Ok(match side {
        Side::Left => a.transpose().nullspace().transpose(),
        Side::Right => a.nullspace(),
    })
}
