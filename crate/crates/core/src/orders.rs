//! One-sided star orders and their equivalent formulations.
//!
//! Each formulation is an [`OrderStrategy`] registered by name in a
//! [`FormulationRegistry`]. On a *-regular ring (every admitted descriptor)
//! all five formulations decide the same relation; [`equivalence_report`]
//! evaluates them side by side.
//!
//! | name      | right order `a ≤ b`                          | left order `a ≤ b`                           |
//! |-----------|----------------------------------------------|----------------------------------------------|
//! | `prime`   | `b a″ = a = a b″`                            | `a‵‵ b = a = b‵‵ a`                          |
//! | `stareq`  | `a a* = b a*` and `a″ ≤ b″`                  | `a* a = a* b` and `a‵‵ ≤ b‵‵`                |
//! | `range`   | `a a* = b a*` and row space of `a` ⊆ that of `b` | `a* a = a* b` and column space of `a` ⊆ that of `b` |
//! | `exist`   | `a a* = b a*` and `a = c b` for some `c`     | `a* a = a* b` and `a = b c` for some `c`     |
//! | `witness` | idempotent and projection witnesses, see [`witness_check`] | likewise                        |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::projections::{proj_le, Projection};
use crate::star_ring::{annihilator_oracle, pinv, primes, RingDescriptor, Side};

/// Identifies one definition of the one-sided star orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrderFormulation {
    RangeInclusion,
    Existential,
    PrimeForm,
    StarEqPlusProjection,
    IdempotentWitness,
}

impl OrderFormulation {
    pub const ALL: [OrderFormulation; 5] = [
        OrderFormulation::PrimeForm,
        OrderFormulation::StarEqPlusProjection,
        OrderFormulation::RangeInclusion,
        OrderFormulation::Existential,
        OrderFormulation::IdempotentWitness,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            OrderFormulation::PrimeForm => "prime",
            OrderFormulation::StarEqPlusProjection => "stareq",
            OrderFormulation::RangeInclusion => "range",
            OrderFormulation::Existential => "exist",
            OrderFormulation::IdempotentWitness => "witness",
        }
    }
}

impl fmt::Display for OrderFormulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderFormulation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OrderFormulation::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFormulation(s.to_string()))
    }
}

/// One way of deciding `a ≤ b` in the left or right star order.
pub trait OrderStrategy: Send + Sync {
    fn formulation(&self) -> OrderFormulation;

    fn name(&self) -> &'static str {
        self.formulation().name()
    }

    fn holds(&self, a: &Matrix, b: &Matrix, side: Side) -> Result<bool>;
}

/// Order strategies keyed by name.
pub struct FormulationRegistry {
    strategies: BTreeMap<&'static str, Box<dyn OrderStrategy>>,
}

impl Default for FormulationRegistry {
    fn default() -> Self {
        FormulationRegistry::standard()
    }
}

impl FormulationRegistry {
    pub fn empty() -> Self {
        FormulationRegistry { strategies: BTreeMap::new() }
    }

    /// All five built-in formulations.
    pub fn standard() -> Self {
        let mut r = FormulationRegistry::empty();
        r.register(PrimeForm);
        r.register(StarEqPlusProjection);
        r.register(RangeInclusion);
        r.register(Existential);
        r.register(IdempotentWitness);
        r
    }

    /// Shared instance of [`FormulationRegistry::standard`].
    pub fn global() -> &'static FormulationRegistry {
        static REGISTRY: OnceLock<FormulationRegistry> = OnceLock::new();
        REGISTRY.get_or_init(FormulationRegistry::standard)
    }

    pub fn register<S: OrderStrategy + 'static>(&mut self, strategy: S) {
        self.strategies.insert(strategy.name(), Box::new(strategy));
    }

    pub fn get(&self, name: &str) -> Result<&dyn OrderStrategy> {
        self.strategies
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownFormulation(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.strategies.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn OrderStrategy> {
        self.strategies.values().map(|s| s.as_ref())
    }
}

fn ring_pair(a: &Matrix, b: &Matrix) -> Result<()> {
    a.same_shape(b)?;
    RingDescriptor::of(a)?.require_proper()?;
    Ok(())
}

fn disagreement(what: &str, a: &Matrix, b: &Matrix, verdicts: &[bool]) -> Error {
    Error::InternalDisagreement(format!("{what} on a = {a}, b = {b}: {verdicts:?}"))
}

/// Range inclusion: for [`Side::Right`] the right ideals `aR ⊆ bR` (column
/// spaces), for [`Side::Left`] the left ideals `Ra ⊆ Rb` (row spaces).
///
/// Decided three ways that must agree: a rank test on the stacked matrix,
/// solvability of `a = b x` (resp. `a = y b`), and for square inputs the
/// prime identity `b‵‵ a = a` (resp. `a b″ = a`).
pub fn range_le(a: &Matrix, b: &Matrix, side: Side) -> Result<bool> {
    a.same_shape(b)?;
    let (a_cols, b_cols) = match side {
        Side::Right => (a.clone(), b.clone()),
        Side::Left => (a.transpose(), b.transpose()),
    };
    let by_rank = b_cols.hstack(&a_cols).rank() == b_cols.rank();
    let by_solve = b_cols.solvable(&a_cols);
    let mut verdicts = vec![by_rank, by_solve];
    if a.is_square() && RingDescriptor::of(a)?.proper {
        let q = primes(b)?;
        verdicts.push(match side {
            Side::Right => q.left_double.matrix() * a == *a,
            Side::Left => a * q.right_double.matrix() == *a,
        });
    }
    if verdicts.iter().any(|&v| v != by_rank) {
        return Err(disagreement("range inclusion", a, b, &verdicts));
    }
    Ok(by_rank)
}

/// The star equation: `a a* = b a*` (right) or `a* a = a* b` (left).
///
/// For square inputs this is cross-checked against the projection forms
/// `a = b a″` (right) and `a = a‵‵ b` (left).
pub fn star_eq(a: &Matrix, b: &Matrix, side: Side) -> Result<bool> {
    a.same_shape(b)?;
    let a_star = a.star();
    let direct = match side {
        Side::Right => a * &a_star == b * &a_star,
        Side::Left => &a_star * a == &a_star * b,
    };
    if a.is_square() && RingDescriptor::of(a)?.proper {
        let q = primes(a)?;
        let via_primes = match side {
            Side::Right => b * q.right_double.matrix() == *a,
            Side::Left => q.left_double.matrix() * b == *a,
        };
        if via_primes != direct {
            return Err(disagreement("star equation", a, b, &[direct, via_primes]));
        }
    }
    Ok(direct)
}

/// The five equivalent conditions relating the second identity of the prime
/// form to the projection order:
///
/// right: `a b″ = a`, `a b′ = 0`, `a″ b′ = 0`, `a″ b″ = a″`, `a″ ≤ b″`;
/// left:  `b‵‵ a = a`, `b‵ a = 0`, `b‵ a‵‵ = 0`, `b‵‵ a‵‵ = a‵‵`, `a‵‵ ≤ b‵‵`.
pub fn prime_chain(a: &Matrix, b: &Matrix, side: Side) -> Result<[bool; 5]> {
    ring_pair(a, b)?;
    let qa = primes(a)?;
    let qb = primes(b)?;
    Ok(match side {
        Side::Right => {
            let (ad, bp, bd) = (qa.right_double.matrix(), qb.right_prime.matrix(), qb.right_double.matrix());
            [
                a * bd == *a,
                (a * bp).is_zero(),
                (ad * bp).is_zero(),
                ad * bd == *ad,
                proj_le(&qa.right_double, &qb.right_double)?,
            ]
        }
        Side::Left => {
            let (ad, bp, bd) = (qa.left_double.matrix(), qb.left_prime.matrix(), qb.left_double.matrix());
            [
                bd * a == *a,
                (bp * a).is_zero(),
                (bp * ad).is_zero(),
                bd * ad == *ad,
                proj_le(&qa.left_double, &qb.left_double)?,
            ]
        }
    })
}

/// Prime form: `b a″ = a = a b″` (right), `a‵‵ b = a = b‵‵ a` (left).
pub struct PrimeForm;

impl OrderStrategy for PrimeForm {
    fn formulation(&self) -> OrderFormulation {
        OrderFormulation::PrimeForm
    }

    fn holds(&self, a: &Matrix, b: &Matrix, side: Side) -> Result<bool> {
        ring_pair(a, b)?;
        let qa = primes(a)?;
        let qb = primes(b)?;
        Ok(match side {
            Side::Right => b * qa.right_double.matrix() == *a && a * qb.right_double.matrix() == *a,
            Side::Left => qa.left_double.matrix() * b == *a && qb.left_double.matrix() * a == *a,
        })
    }
}

/// Star equation plus the projection order on the doubles.
pub struct StarEqPlusProjection;

impl OrderStrategy for StarEqPlusProjection {
    fn formulation(&self) -> OrderFormulation {
        OrderFormulation::StarEqPlusProjection
    }

    fn holds(&self, a: &Matrix, b: &Matrix, side: Side) -> Result<bool> {
        ring_pair(a, b)?;
        if !star_eq(a, b, side)? {
            return Ok(false);
        }
        let qa = primes(a)?;
        let qb = primes(b)?;
        match side {
            Side::Right => proj_le(&qa.right_double, &qb.right_double),
            Side::Left => proj_le(&qa.left_double, &qb.left_double),
        }
    }
}

/// Star equation plus inclusion of row spaces (right order) or column spaces
/// (left order). Accepts rectangular matrices.
pub struct RangeInclusion;

impl OrderStrategy for RangeInclusion {
    fn formulation(&self) -> OrderFormulation {
        OrderFormulation::RangeInclusion
    }

    fn holds(&self, a: &Matrix, b: &Matrix, side: Side) -> Result<bool> {
        Ok(star_eq(a, b, side)? && range_le(a, b, side.flip())?)
    }
}

/// Star equation plus an explicit factor: `a = c b` (right) or `a = b c`
/// (left) for some `c`. Accepts rectangular matrices.
pub struct Existential;

impl OrderStrategy for Existential {
    fn formulation(&self) -> OrderFormulation {
        OrderFormulation::Existential
    }

    fn holds(&self, a: &Matrix, b: &Matrix, side: Side) -> Result<bool> {
        if !star_eq(a, b, side)? {
            return Ok(false);
        }
        Ok(match side {
            Side::Right => b.transpose().solvable(&a.transpose()),
            Side::Left => b.solvable(a),
        })
    }
}

/// Decided by [`witness_check`].
pub struct IdempotentWitness;

impl OrderStrategy for IdempotentWitness {
    fn formulation(&self) -> OrderFormulation {
        OrderFormulation::IdempotentWitness
    }

    fn holds(&self, a: &Matrix, b: &Matrix, side: Side) -> Result<bool> {
        Ok(matches!(witness_check(a, b, side)?, WitnessOutcome::Verified(_)))
    }
}

/// Verified witnesses for `a ≤ b`.
///
/// For the left order: the projection `p = a‵‵` with `a = p b` (equivalent to
/// `a* a = a* b`) and the idempotent `q = b† a` with `a = b q` and
/// `q x = 0 ⟺ a x = 0`. The right order is the mirror image under the
/// involution: `q = a″` with `a = b q`, and the idempotent `p = a b†` with
/// `a = p b` and `y p = 0 ⟺ y a = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderWitness {
    pub side: Side,
    pub projection: Projection,
    pub idempotent: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Verified(OrderWitness),
    /// The canonical witnesses fail; `reason` names the first failed check.
    Refuted { reason: String },
}

/// Whether the annihilators of `x` and `y` on `side` coincide, decided by
/// mutual containment of the elimination bases.
fn same_annihilator(x: &Matrix, y: &Matrix, side: Side) -> Result<bool> {
    let kills = |m: &Matrix, basis: &Matrix| match side {
        Side::Left => (basis * m).is_zero(),
        Side::Right => (m * basis).is_zero(),
    };
    let ax = annihilator_oracle(x, side)?;
    let ay = annihilator_oracle(y, side)?;
    Ok(kills(y, &ax) && kills(x, &ay))
}

/// Builds the canonical witnesses for `a ≤ b` on `side` and verifies them,
/// with the annihilator conditions checked against [`annihilator_oracle`].
pub fn witness_check(a: &Matrix, b: &Matrix, side: Side) -> Result<WitnessOutcome> {
    ring_pair(a, b)?;
    let qa = primes(a)?;
    let b_dagger = pinv(b)?;
    let refute = |reason: &str| Ok(WitnessOutcome::Refuted { reason: reason.to_string() });
    // projection witness for the star equation, annihilated on the opposite side
    let (projection, star_ok, star_side) = match side {
        Side::Left => {
            let p = qa.left_double;
            let ok = p.matrix() * b == *a;
            (p, ok, Side::Left)
        }
        Side::Right => {
            let q = qa.right_double;
            let ok = b * q.matrix() == *a;
            (q, ok, Side::Right)
        }
    };
    if !star_ok {
        return refute("projection witness does not factor a through b");
    }
    if !same_annihilator(projection.matrix(), a, star_side)? {
        return refute("projection witness has the wrong annihilator");
    }
    let (idempotent, factor_ok, idem_side) = match side {
        Side::Left => {
            let q = &b_dagger * a;
            let ok = b * &q == *a;
            (q, ok, Side::Right)
        }
        Side::Right => {
            let p = a * &b_dagger;
            let ok = &p * b == *a;
            (p, ok, Side::Left)
        }
    };
    if !factor_ok {
        return refute("idempotent witness does not factor a through b");
    }
    if !idempotent.is_idempotent() {
        return refute("idempotent witness is not idempotent");
    }
    if !same_annihilator(&idempotent, a, idem_side)? {
        return refute("idempotent witness has the wrong annihilator");
    }
    Ok(WitnessOutcome::Verified(OrderWitness { side, projection, idempotent }))
}

/// `a ≤ b` in the left star order under formulation `f`.
pub fn left_star_le(a: &Matrix, b: &Matrix, f: OrderFormulation) -> Result<bool> {
    FormulationRegistry::global().get(f.name())?.holds(a, b, Side::Left)
}

/// `a ≤ b` in the right star order under formulation `f`.
pub fn right_star_le(a: &Matrix, b: &Matrix, f: OrderFormulation) -> Result<bool> {
    FormulationRegistry::global().get(f.name())?.holds(a, b, Side::Right)
}

/// `a ≤ b` on `side` under the prime form, the canonical formulation.
pub fn star_le(a: &Matrix, b: &Matrix, side: Side) -> Result<bool> {
    PrimeForm.holds(a, b, side)
}

/// Verdicts of every formulation on one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub side: Side,
    pub verdicts: BTreeMap<OrderFormulation, bool>,
    pub agreed: bool,
}

impl OrderReport {
    /// The common verdict when all formulations agree.
    pub fn verdict(&self) -> Option<bool> {
        let first = *self.verdicts.values().next()?;
        self.agreed.then_some(first)
    }
}

/// Evaluates every registered formulation on `(a, b)`.
pub fn equivalence_report(a: &Matrix, b: &Matrix, side: Side) -> Result<OrderReport> {
    report_with(FormulationRegistry::global(), a, b, side)
}

pub fn report_with(registry: &FormulationRegistry, a: &Matrix, b: &Matrix, side: Side) -> Result<OrderReport> {
    ring_pair(a, b)?;
    let verdicts = registry
        .iter()
        .map(|s| Ok((s.formulation(), s.holds(a, b, side)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let mut values = verdicts.values();
    let first = values.next().copied();
    let agreed = values.all(|&v| Some(v) == first);
    Ok(OrderReport { side, verdicts, agreed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    const QI: FieldDescriptor = FieldDescriptor::GaussianRationals;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(QI, rows)
    }

    #[test]
    fn formulation_names_round_trip() {
        for f in OrderFormulation::ALL {
            assert_eq!(f.name().parse::<OrderFormulation>().unwrap(), f);
        }
        assert!(matches!("bogus".parse::<OrderFormulation>(), Err(Error::UnknownFormulation(_))));
        let names: Vec<_> = FormulationRegistry::standard().names().collect();
        assert_eq!(names, ["exist", "prime", "range", "stareq", "witness"]);
    }

    #[test]
    fn range_le_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert!(range_le(&a, &a, Side::Left).unwrap() && range_le(&a, &a, Side::Right).unwrap());
        assert!(range_le(&Matrix::diag(QI, &[1, 0]), &Matrix::identity(QI, 2), Side::Right).unwrap());
        let a = m(&[&[0, 1], &[0, 0]]);
        let b = m(&[&[1, 0], &[0, 0]]);
        assert!(range_le(&a, &b, Side::Right).unwrap());
        assert!(!range_le(&a, &b, Side::Left).unwrap());
    }

    #[test]
    fn range_le_rectangular() {
        let a = m(&[&[1, 2, 3]]);
        let b = m(&[&[2, 4, 6]]);
        assert!(range_le(&a, &b, Side::Left).unwrap());
        assert!(range_le(&a, &b, Side::Right).unwrap());
        assert!(!range_le(&a, &m(&[&[1, 0, 0]]), Side::Left).unwrap());
        assert!(matches!(range_le(&a, &m(&[&[1, 0]]), Side::Left), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn star_eq_examples() {
        let a = m(&[&[1, 2], &[0, 1]]);
        assert!(star_eq(&a, &a, Side::Left).unwrap() && star_eq(&a, &a, Side::Right).unwrap());
        let e = Matrix::parse(QI, &[&["1/2", "1/2"], &["1/2", "1/2"]]).unwrap();
        assert!(star_eq(&e, &Matrix::identity(QI, 2), Side::Right).unwrap());
        assert!(!star_eq(&m(&[&[0, 1], &[0, 0]]), &Matrix::identity(QI, 2), Side::Right).unwrap());
    }

    #[test]
    fn right_order_examples() {
        let b = m(&[&[1, 1], &[2, 0]]);
        for f in OrderFormulation::ALL {
            assert!(right_star_le(&Matrix::zeros(QI, 2, 2), &b, f).unwrap(), "{f}");
        }
        let e = Matrix::diag(QI, &[1, 0]);
        let half = Matrix::parse(QI, &[&["1/2", "1/2"], &["1/2", "1/2"]]).unwrap();
        assert!(!right_star_le(&e, &half, OrderFormulation::PrimeForm).unwrap());
        assert!(right_star_le(&e, &Matrix::identity(QI, 2), OrderFormulation::PrimeForm).unwrap());
        assert!(!right_star_le(&e, &m(&[&[1, 0], &[1, 0]]), OrderFormulation::PrimeForm).unwrap());
    }

    #[test]
    fn star_equation_without_range_inclusion() {
        // a a* = b a* but the row space of a is not inside that of b
        let a = m(&[&[1, 0], &[0, 0]]);
        let b = m(&[&[1, 1], &[0, 0]]);
        assert!(star_eq(&a, &b, Side::Right).unwrap());
        let report = equivalence_report(&a, &b, Side::Right).unwrap();
        assert!(report.agreed, "{report:?}");
        assert_eq!(report.verdict(), Some(false));
    }

    #[test]
    fn left_order_needs_a_non_projection_idempotent() {
        // a* a = a* b, ran a ⊆ ran b, yet a ≠ b a″
        let a = m(&[&[1, 0], &[0, 0]]);
        let b = m(&[&[1, 0], &[1, 1]]);
        let report = equivalence_report(&a, &b, Side::Left).unwrap();
        assert!(report.agreed, "{report:?}");
        assert_eq!(report.verdict(), Some(true));
        let WitnessOutcome::Verified(w) = witness_check(&a, &b, Side::Left).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(w.idempotent, m(&[&[1, 0], &[-1, 0]]));
        assert_eq!(*w.projection.matrix(), a);
    }

    #[test]
    fn witness_examples() {
        let e = Matrix::parse(QI, &[&["1/2", "1/2"], &["1/2", "1/2"]]).unwrap();
        let WitnessOutcome::Verified(w) = witness_check(&e, &Matrix::identity(QI, 2), Side::Right).unwrap() else {
            panic!();
        };
        assert_eq!(*w.projection.matrix(), e);
        assert_eq!(w.idempotent, e);
        let b = m(&[&[2, 1], &[0, 3]]);
        let WitnessOutcome::Verified(w) = witness_check(&Matrix::zeros(QI, 2, 2), &b, Side::Right).unwrap() else {
            panic!();
        };
        assert!(w.projection.matrix().is_zero() && w.idempotent.is_zero());
        assert!(matches!(
            witness_check(&Matrix::diag(QI, &[1, 0]), &m(&[&[1, 0], &[1, 0]]), Side::Right).unwrap(),
            WitnessOutcome::Refuted { .. }
        ));
    }

    #[test]
    fn chains_agree() {
        let a = m(&[&[1, 0], &[1, 0]]);
        let b = m(&[&[1, 2], &[1, -1]]);
        for side in Side::BOTH {
            let chain = prime_chain(&a, &b, side).unwrap();
            assert!(chain.iter().all(|&c| c == chain[0]), "{side}: {chain:?}");
        }
    }

    #[test]
    fn ring_formulations_reject_rectangular_or_improper() {
        let r = m(&[&[1, 2, 3]]);
        assert!(matches!(PrimeForm.holds(&r, &r, Side::Right), Err(Error::ShapeMismatch(_))));
        assert!(RangeInclusion.holds(&r, &r, Side::Right).unwrap());
        let f5 = FieldDescriptor::prime(5).unwrap();
        let x = Matrix::identity(f5, 2);
        assert!(matches!(PrimeForm.holds(&x, &x, Side::Left), Err(Error::ImproperDescriptor(_))));
    }
}
