//! Exact scalar fields with involution.
//!
//! Two domains are supported: the Gaussian rationals `Q(i)` with complex
//! conjugation, and prime fields `F_p` with the identity involution. Both are
//! wrapped in the runtime enum [`Scalar`] so that the field of a matrix can be
//! chosen from a file or the command line.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use crate::rational::Rational;

/// Largest modulus admitted for a prime field. Keeps products inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The scalar domain of a matrix *-ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDescriptor {
    #[serde(rename = "Qi")]
    GaussianRationals,
    #[serde(rename = "Fp")]
    PrimeField { p: u64 },
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::InvalidField(format!("modulus {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldDescriptor::PrimeField { p })
    }

    /// Checks the invariants a deserialized descriptor may violate.
    pub fn validate(self) -> Result<Self> {
        match self {
            FieldDescriptor::GaussianRationals => Ok(self),
            FieldDescriptor::PrimeField { p } => FieldDescriptor::prime(p),
        }
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldDescriptor::GaussianRationals => None,
            FieldDescriptor::PrimeField { p } => Some(p),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldDescriptor::GaussianRationals => {
                Scalar::Qi(GaussianRational::from_rational(Rational::from_integer(n.into())))
            }
            FieldDescriptor::PrimeField { p } => Scalar::Fp(Fp::new(n.rem_euclid(p as i64) as u64, p)),
        }
    }

    /// All field elements in ascending canonical order. Only prime fields are finite.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        self.modulus()
            .map(|p| (0..p).map(|v| Scalar::Fp(Fp::new(v, p))).collect())
    }

    /// Parses a scalar written in the text grammar of this field.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        match self {
            FieldDescriptor::GaussianRationals => GaussianRational::parse(text).map(Scalar::Qi),
            FieldDescriptor::PrimeField { p } => Fp::parse(text, p).map(Scalar::Fp),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::GaussianRationals => write!(f, "Qi"),
            FieldDescriptor::PrimeField { p } => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element `re + im·i` of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_ints(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational {
            re: Rational::from_pair(re.0, re.1),
            im: Rational::from_pair(im.0, im.1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`; zero exactly when the element is zero.
    pub fn norm_square(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_square();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    fn parse(text: &str) -> Result<Self> {
        let Some(body) = text.strip_suffix('i') else {
            return Ok(GaussianRational::from_rational(parse_rational(text)?));
        };
        // the separating sign is the last '+'/'-' that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| Error::Parse(format!("'{text}': imaginary part needs RATIONAL SIGN RATIONAL i")))?;
        let re = parse_rational(&body[..split])?;
        let sign = &body[split..split + 1];
        let magnitude = &body[split + 1..];
        if magnitude.starts_with(['+', '-']) {
            return Err(Error::Parse(format!("'{text}': doubled sign")));
        }
        let im = parse_rational(magnitude)?;
        Ok(GaussianRational { re, im: if sign == "-" { -im } else { im } })
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.re)?;
        if !self.im.is_zero() {
            f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
            write_rational(f, &self.im.abs())?;
            f.write_str("i")?;
        }
        Ok(())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    write!(f, "{r}")
}

/// `INT | INT "/" POSINT`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("'{text}' is not a rational"));
    let int = |s: &str, signed: bool| -> Result<BigInt> {
        let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(int(text, true)?)),
        Some((n, d)) => {
            let n = int(n, true)?;
            let d = int(d, false)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("'{text}': zero denominator")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// An element of the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Fp { value, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: v^(p-2)
        let p = self.modulus;
        let (mut base, mut exp, mut acc) = (self.value, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Ok(Fp::new(acc, p))
    }

    fn parse(text: &str, p: u64) -> Result<Self> {
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) || (text.len() > 1 && text.starts_with('0')) {
            return Err(Error::Parse(format!("'{text}' is not a canonical F{p} element")));
        }
        match text.parse::<u64>() {
            Ok(v) if v < p => Ok(Fp::new(v, p)),
            _ => Err(Error::Parse(format!("'{text}' is outside [0, {p})"))),
        }
    }
}

impl PartialOrd for Fp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fp {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus, self.value).cmp(&(other.modulus, other.value))
    }
}

/// A field element with involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Qi(GaussianRational),
    Fp(Fp),
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Qi(_) => FieldDescriptor::GaussianRationals,
            Scalar::Fp(x) => FieldDescriptor::PrimeField { p: x.modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Qi(z) => z.is_zero(),
            Scalar::Fp(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Qi(z) => z.re.is_one() && z.im.is_zero(),
            Scalar::Fp(x) => x.value == 1,
        }
    }

    /// The involution: complex conjugation on `Q(i)`, identity on `F_p`.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Qi(z) => Scalar::Qi(z.conj()),
            Scalar::Fp(x) => Scalar::Fp(*x),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Qi(z) => z.inv().map(Scalar::Qi),
            Scalar::Fp(x) => x.inv().map(Scalar::Fp),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Qi(z) => z.fmt(f),
            Scalar::Fp(x) => write!(f, "{}", x.value),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Qi(a), Scalar::Qi(b)) => Scalar::Qi(GaussianRational { re: &a.re + &b.re, im: &a.im + &b.im }),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.modulus == b.modulus => {
                Scalar::Fp(Fp::new((a.value + b.value) % a.modulus, a.modulus))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Qi(a), Scalar::Qi(b)) => Scalar::Qi(GaussianRational {
                re: &a.re * &b.re - &a.im * &b.im,
                im: &a.re * &b.im + &a.im * &b.re,
            }),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.modulus == b.modulus => {
                Scalar::Fp(Fp::new(a.value * b.value % a.modulus, a.modulus))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Qi(a) => Scalar::Qi(GaussianRational { re: -a.re.clone(), im: -a.im.clone() }),
            Scalar::Fp(a) => Scalar::Fp(Fp::new((a.modulus - a.value) % a.modulus, a.modulus)),
        }
    }
}
