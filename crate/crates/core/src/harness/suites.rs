//! The registered verification suites.
//!
//! Each suite runs exhaustively over a cached [`RingTable`] when the universe
//! is enumerable, and otherwise over seeded random cases built so that the
//! interesting preconditions (comparable pairs, subprojections, common
//! bounds) hold by construction.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{sample_matrix, Mode, PosetTable, RingTable, RingUniverse, Suite, Tally};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::order_structure::{bounded_meet, initial_segment, is_maximal, phi, psi, segment_join, segment_meet, Maximality};
use crate::orders::{equivalence_report, prime_chain, star_le};
use crate::projections::{column_space_basis, proj_join, proj_le, proj_meet, proj_ortho, projection_onto, Projection};
use crate::star_ring::{annihilator_oracle, pinv, primes, Side};

type Property = fn(&[Matrix]) -> Result<bool>;

fn pre(what: impl Into<String>) -> Error {
    Error::PreconditionViolated(what.into())
}

fn as_projection(m: &Matrix) -> Result<Projection> {
    Projection::certify(m.clone()).map_err(|_| pre(format!("{m} is not a projection")))
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(pre(what))
    }
}

fn sample_count(u: &RingUniverse) -> u64 {
    match u.mode {
        Mode::Sampled { count, .. } => count,
        Mode::Exhaustive => 0,
    }
}

/// Runs `case` for every index in parallel and merges the tallies in index order.
fn over(count: usize, case: impl Fn(usize, &mut Tally) -> Result<()> + Sync + Send) -> Result<Tally> {
    let parts = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            case(i, &mut t)?;
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(Tally::default(), Tally::merge))
}

fn table(u: &RingUniverse) -> Result<Arc<RingTable>> {
    RingTable::shared(u.descriptor)
}

/// Every element of an exhaustive universe, or the sampled elements in order.
fn universe_elements(u: &RingUniverse) -> Result<Vec<Matrix>> {
    if u.is_exhaustive() {
        return Ok(table(u)?.elements.clone());
    }
    (0..sample_count(u)).map(|i| sample_matrix(u, i)).collect()
}

fn one(u: &RingUniverse) -> Projection {
    Projection::one(u.descriptor.field, u.descriptor.size)
}

fn random_projection(u: &RingUniverse, rng: &mut ChaCha8Rng) -> Result<Projection> {
    u.random_subprojection(&one(u), rng)
}

/// A random element below `x` on `side`: `x e` with `e ≤ x″`, or `e x` with `e ≤ x‵‵`.
fn random_below(u: &RingUniverse, x: &Matrix, side: Side, rng: &mut ChaCha8Rng) -> Result<Matrix> {
    let q = primes(x)?;
    Ok(match side {
        Side::Right => x * u.random_subprojection(&q.right_double, rng)?.matrix(),
        Side::Left => u.random_subprojection(&q.left_double, rng)?.matrix() * x,
    })
}

fn rle(a: &Matrix, b: &Matrix) -> Result<bool> {
    star_le(a, b, Side::Right)
}

// ---------------------------------------------------------------------------

/// The four Penrose identities for `a†`, plus `a†† = a` and `(a*)† = (a†)*`.
pub struct PenroseSuite;

const PENROSE: [(&str, Property); 5] = [
    ("a a† a = a", |m| {
        let x = pinv(&m[0])?;
        Ok(&(&m[0] * &x) * &m[0] == m[0])
    }),
    ("a† a a† = a†", |m| {
        let x = pinv(&m[0])?;
        Ok(&(&x * &m[0]) * &x == x)
    }),
    ("(a a†)* = a a†", |m| Ok((&m[0] * &pinv(&m[0])?).is_self_adjoint())),
    ("(a† a)* = a† a", |m| Ok((&pinv(&m[0])? * &m[0]).is_self_adjoint())),
    ("a†† = a and (a*)† = (a†)*", |m| {
        let x = pinv(&m[0])?;
        Ok(pinv(&x)? == m[0] && pinv(&m[0].star())? == x.star())
    }),
];

impl Suite for PenroseSuite {
    fn name(&self) -> &'static str {
        "penrose"
    }

    fn run(&self, u: &RingUniverse) -> Result<Tally> {
        let elements = universe_elements(u)?;
        over(elements.len(), |i, t| {
            for (name, p) in PENROSE {
                t.check(name, vec![elements[i].clone()], &p);
            }
            Ok(())
        })
    }
}

// ---------------------------------------------------------------------------

/// Primes against elimination-based annihilators and projections.
pub struct PrimesSuite;

const PRIME_SINGLES: [(&str, Property); 6] = [
    ("primes are projections", |m| primes(&m[0]).map(|_| true)),
    ("a‵ + a‵‵ = 1 and a′ + a″ = 1", |m| {
        let q = primes(&m[0])?;
        Ok((q.left_prime.matrix() + q.left_double.matrix()).is_identity()
            && (q.right_prime.matrix() + q.right_double.matrix()).is_identity())
    }),
    ("left annihilator is generated by a‵", |m| {
        let q = primes(&m[0])?;
        let y = annihilator_oracle(&m[0], Side::Left)?;
        Ok(&y * q.left_prime.matrix() == y && y.rows() == q.left_prime.matrix().rank())
    }),
    ("right annihilator is generated by a′", |m| {
        let q = primes(&m[0])?;
        let z = annihilator_oracle(&m[0], Side::Right)?;
        Ok(q.right_prime.matrix() * &z == z && z.cols() == q.right_prime.matrix().rank())
    }),
    ("x‵ = (x*)′ and x′ = (x*)‵", |m| {
        let q = primes(&m[0])?;
        let s = primes(&m[0].star())?;
        Ok(s.right_prime == q.left_prime && s.left_prime == q.right_prime)
    }),
    ("a‵‵ and a″ project onto the ranges of a and a*", |m| {
        let q = primes(&m[0])?;
        Ok(q.left_double == projection_onto(&column_space_basis(&m[0]))?
            && q.right_double == projection_onto(&column_space_basis(&m[0].star()))?)
    }),
];

const PRIME_PAIRS: [(&str, Property); 3] = [
    ("y a = 0 iff y a‵‵ = 0 iff y a‵ = y", |m| {
        let (a, r) = (&m[0], &m[1]);
        let q = primes(a)?;
        let mut ok = true;
        for vectors in [r.clone(), annihilator_oracle(a, Side::Left)?] {
            for i in 0..vectors.rows() {
                let y = vectors.select_rows(&[i]);
                let kills = (&y * a).is_zero();
                ok &= kills == (&y * q.left_double.matrix()).is_zero();
                ok &= kills == (&y * q.left_prime.matrix() == y);
            }
        }
        for vectors in [r.clone(), annihilator_oracle(a, Side::Right)?] {
            for j in 0..vectors.cols() {
                let z = vectors.column(j);
                let kills = (a * &z).is_zero();
                ok &= kills == (q.right_double.matrix() * &z).is_zero();
                ok &= kills == (q.right_prime.matrix() * &z == z);
            }
        }
        Ok(ok)
    }),
    ("a a* = b a* iff a = b a″, and dually", |m| {
        let (a, b) = (&m[0], &m[1]);
        let q = primes(a)?;
        let right = (a * &a.star() == b * &a.star()) == (*a == b * q.right_double.matrix());
        let left = (&a.star() * a == &a.star() * b) == (*a == q.left_double.matrix() * b);
        Ok(right && left)
    }),
    ("a = b e with e projection gives a a* = b a*, and dually", |m| {
        let (b, c) = (&m[0], &m[1]);
        let e = projection_onto(&column_space_basis(c))?;
        let a = b * e.matrix();
        let right = &a * &a.star() == b * &a.star() && a == b * primes(&a)?.right_double.matrix();
        let a = e.matrix() * b;
        let left = &a.star() * &a == &a.star() * b && a == primes(&a)?.left_double.matrix() * b;
        Ok(right && left)
    }),
];

impl Suite for PrimesSuite {
    fn name(&self) -> &'static str {
        "primes"
    }

    fn run(&self, u: &RingUniverse) -> Result<Tally> {
        let elements = universe_elements(u)?;
        let exhaustive = u.is_exhaustive();
        over(elements.len(), |i, t| {
            let a = &elements[i];
            for (name, p) in PRIME_SINGLES {
                t.check(name, vec![a.clone()], &p);
            }
            let partners = if exhaustive {
                elements.clone()
            } else {
                let mut rng = u.rng(i as u64, 11);
                vec![u.random_element(&mut rng), u.random_element(&mut rng)]
            };
            for b in &partners {
                for (name, p) in PRIME_PAIRS {
                    t.check(name, vec![a.clone(), b.clone()], &p);
                }
            }
            Ok(())
        })
    }
}

// ---------------------------------------------------------------------------

/// Elementary identities of the primes: annihilation, absorption, products,
/// subprojections and closure of annihilating projections.
pub struct ProductPrimesSuite;

const PROP22_SINGLES: [(&str, Property); 2] = [
    ("a‵ a = 0 and a a′ = 0", |m| {
        let q = primes(&m[0])?;
        Ok((q.left_prime.matrix() * &m[0]).is_zero() && (&m[0] * q.right_prime.matrix()).is_zero())
    }),
    ("a‵‵ a = a = a a″", |m| {
        let q = primes(&m[0])?;
        Ok(q.left_double.matrix() * &m[0] == m[0] && &m[0] * q.right_double.matrix() == m[0])
    }),
];

const PROP22_PAIRS: [(&str, Property); 2] = [
    ("(ab)″ ≤ b″ and (ab)‵‵ ≤ a‵‵", |m| {
        let ab = primes(&(&m[0] * &m[1]))?;
        Ok(proj_le(&ab.right_double, &primes(&m[1])?.right_double)?
            && proj_le(&ab.left_double, &primes(&m[0])?.left_double)?)
    }),
    ("(ab)″ = (a″b)″ and (ab)‵‵ = (ab‵‵)‵‵", |m| {
        let (a, b) = (&m[0], &m[1]);
        let ab = primes(&(a * b))?;
        let ad_b = primes(&(primes(a)?.right_double.matrix() * b))?;
        let a_bd = primes(&(a * primes(b)?.left_double.matrix()))?;
        Ok(ab.right_double == ad_b.right_double && ab.left_double == a_bd.left_double)
    }),
];

fn prop22_sub_right(m: &[Matrix]) -> Result<bool> {
    let (a, e) = (&m[0], as_projection(&m[1])?);
    require(proj_le(&e, &primes(a)?.right_double)?, "e ≤ a″")?;
    Ok(primes(&(a * e.matrix()))?.right_double == e)
}

fn prop22_sub_left(m: &[Matrix]) -> Result<bool> {
    let (a, e) = (&m[0], as_projection(&m[1])?);
    require(proj_le(&e, &primes(a)?.left_double)?, "e ≤ a‵‵")?;
    Ok(primes(&(e.matrix() * a))?.left_double == e)
}

fn prop22_closed_right(m: &[Matrix]) -> Result<bool> {
    let (a, e, f) = (&m[0], as_projection(&m[1])?, as_projection(&m[2])?);
    require((a * e.matrix()).is_zero() && (a * f.matrix()).is_zero(), "a e = 0 = a f")?;
    Ok((a * proj_meet(&e, &f)?.matrix()).is_zero() && (a * proj_join(&e, &f)?.matrix()).is_zero())
}

fn prop22_closed_left(m: &[Matrix]) -> Result<bool> {
    let (a, e, f) = (&m[0], as_projection(&m[1])?, as_projection(&m[2])?);
    require((e.matrix() * a).is_zero() && (f.matrix() * a).is_zero(), "e a = 0 = f a")?;
    Ok((proj_meet(&e, &f)?.matrix() * a).is_zero() && (proj_join(&e, &f)?.matrix() * a).is_zero())
}

impl Suite for ProductPrimesSuite {
    fn name(&self) -> &'static str {
        "prop22"
    }

    fn run(&self, u: &RingUniverse) -> Result<Tally> {
        let elements = universe_elements(u)?;
        let sub_right = "e ≤ a″ implies (a e)″ = e";
        let sub_left = "e ≤ a‵‵ implies (e a)‵‵ = e";
        let closed_right = "{e : a e = 0} is closed under ∧ and ∨";
        let closed_left = "{e : e a = 0} is closed under ∧ and ∨";
        let projections: Vec<Projection> = if u.is_exhaustive() {
            let t = table(u)?;
            t.projections.iter().map(|&i| as_projection(t.at(i))).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        over(elements.len(), |i, t| {
            let a = &elements[i];
            for (name, p) in PROP22_SINGLES {
                t.check(name, vec![a.clone()], &p);
            }
            let q = primes(a)?;
            if u.is_exhaustive() {
                for b in &elements {
                    for (name, p) in PROP22_PAIRS {
                        t.check(name, vec![a.clone(), b.clone()], &p);
                    }
                }
                let kills = |e: &Projection, side: Side| match side {
                    Side::Right => (a * e.matrix()).is_zero(),
                    Side::Left => (e.matrix() * a).is_zero(),
                };
                for e in &projections {
                    if proj_le(e, &q.right_double)? {
                        t.check(sub_right, vec![a.clone(), e.matrix().clone()], &prop22_sub_right);
                    }
                    if proj_le(e, &q.left_double)? {
                        t.check(sub_left, vec![a.clone(), e.matrix().clone()], &prop22_sub_left);
                    }
                    for f in &projections {
                        let inputs = || vec![a.clone(), e.matrix().clone(), f.matrix().clone()];
                        if kills(e, Side::Right) && kills(f, Side::Right) {
                            t.check(closed_right, inputs(), &prop22_closed_right);
                        }
                        if kills(e, Side::Left) && kills(f, Side::Left) {
                            t.check(closed_left, inputs(), &prop22_closed_left);
                        }
                    }
                }
            } else {
                let mut rng = u.rng(i as u64, 22);
                let b = u.random_element(&mut rng);
                for (name, p) in PROP22_PAIRS {
                    t.check(name, vec![a.clone(), b.clone()], &p);
                    t.check(name, vec![b.clone(), a.clone()], &p);
                }
                let e = u.random_subprojection(&q.right_double, &mut rng)?;
                t.check(sub_right, vec![a.clone(), e.into_matrix()], &prop22_sub_right);
                let e = u.random_subprojection(&q.left_double, &mut rng)?;
                t.check(sub_left, vec![a.clone(), e.into_matrix()], &prop22_sub_left);
                let e = u.random_subprojection(&q.right_prime, &mut rng)?;
                let f = u.random_subprojection(&q.right_prime, &mut rng)?;
                t.check(closed_right, vec![a.clone(), e.into_matrix(), f.into_matrix()], &prop22_closed_right);
                let e = u.random_subprojection(&q.left_prime, &mut rng)?;
                let f = u.random_subprojection(&q.left_prime, &mut rng)?;
                t.check(closed_left, vec![a.clone(), e.into_matrix(), f.into_matrix()], &prop22_closed_left);
            }
            Ok(())
        })
    }
}

// ---------------------------------------------------------------------------

/// Reflexivity, antisymmetry and transitivity of both star orders.
pub struct OrderAxiomsSuite;

impl OrderAxiomsSuite {
    fn exhaustive(u: &RingUniverse) -> Result<Tally> {
        let t = table(u)?;
        let n = t.len();
        let mut total = Tally::default();
        for side in Side::BOTH {
            let ord = t.order(side);
            let reflexive = format!("{side} order is reflexive");
            let antisymmetric = format!("{side} order is antisymmetric");
            let transitive = format!("{side} order is transitive");
            total = total.merge(over(n, |i, tally| {
                tally.record(&reflexive, ord.le(i, i), || vec![t.at(i).clone()]);
                for j in 0..n {
                    let ok = i == j || !(ord.le(i, j) && ord.le(j, i));
                    tally.record(&antisymmetric, ok, || vec![t.at(i).clone(), t.at(j).clone()]);
                }
                for j in 0..n {
                    for k in 0..n {
                        let ok = !(ord.le(i, j) && ord.le(j, k)) || ord.le(i, k);
                        tally.record(&transitive, ok, || vec![t.at(i).clone(), t.at(j).clone(), t.at(k).clone()]);
                    }
                }
                Ok(())
            })?);
        }
        Ok(total)
    }

    fn sampled(u: &RingUniverse) -> Result<Tally> {
        let mut total = Tally::default();
        for side in Side::BOTH {
            let le = move |a: &Matrix, b: &Matrix| star_le(a, b, side);
            let reflexive = format!("{side} order is reflexive");
            let antisymmetric = format!("{side} order is antisymmetric");
            let transitive = format!("{side} order is transitive");
            let constructed = format!("{side} constructed chain is ordered");
            let refl = |m: &[Matrix]| le(&m[0], &m[0]);
            let anti = |m: &[Matrix]| Ok(m[0] == m[1] || !(le(&m[0], &m[1])? && le(&m[1], &m[0])?));
            let trans = |m: &[Matrix]| {
                require(le(&m[0], &m[1])? && le(&m[1], &m[2])?, "a ≤ b ≤ c")?;
                le(&m[0], &m[2])
            };
            let chain = |m: &[Matrix]| Ok(le(&m[0], &m[1])? && le(&m[1], &m[2])?);
            total = total.merge(over(sample_count(u) as usize, |i, t| {
                let mut rng = u.rng(i as u64, 33 + side as u64);
                let c = sample_matrix(u, i as u64)?;
                let b = random_below(u, &c, side, &mut rng)?;
                let a = random_below(u, &b, side, &mut rng)?;
                let x = u.random_element(&mut rng);
                t.check(&constructed, vec![a.clone(), b.clone(), c.clone()], &chain);
                t.check(&reflexive, vec![c.clone()], &refl);
                t.check(&reflexive, vec![a.clone()], &refl);
                for (p, q) in [(&a, &b), (&b, &a), (&b, &c), (&c, &x), (&x, &c)] {
                    t.check(&antisymmetric, vec![p.clone(), q.clone()], &anti);
                }
                t.check(&transitive, vec![a, b, c], &trans);
                Ok(())
            })?);
        }
        Ok(total)
    }
}

impl Suite for OrderAxiomsSuite {
    fn name(&self) -> &'static str {
        "order-axioms"
    }

    fn run(&self, u: &RingUniverse) -> Result<Tally> {
        if u.is_exhaustive() {
            Self::exhaustive(u)
        } else {
            Self::sampled(u)
        }
    }
}

// ---------------------------------------------------------------------------

/// Agreement of the five order formulations, left/right duality under the
/// involution, and the five-way prime chain.
pub struct EquivalenceSuite;

const EQUIVALENCE: [(&str, Property); 5] = [
    ("right formulations agree", |m| Ok(equivalence_report(&m[0], &m[1], Side::Right)?.agreed)),
    ("left formulations agree", |m| Ok(equivalence_report(&m[0], &m[1], Side::Left)?.agreed)),
    ("left order is the right order of adjoints", |m| {
        let left = equivalence_report(&m[0], &m[1], Side::Left)?;
        let right = equivalence_report(&m[0].star(), &m[1].star(), Side::Right)?;
        Ok(left.verdicts == right.verdicts)
    }),
    ("right prime chain is constant", |m| {
        let c = prime_chain(&m[0], &m[1], Side::Right)?;
        Ok(c.iter().all(|&v| v == c[0]))
    }),
    ("left prime chain is constant", |m| {
        let c = prime_chain(&m[0], &m[1], Side::Left)?;
        Ok(c.iter().all(|&v| v == c[0]))
    }),
];

impl Suite for EquivalenceSuite {
    fn name(&self) -> &'static str {
        "equivalence"
    }

    fn run(&self, u: &RingUniverse) -> Result<Tally> {
        if u.is_exhaustive() {
            let t = table(u)?;
            let n = t.len();
            return over(n * n, |k, tally| {
                let (a, b) = (t.at(k / n), t.at(k % n));
                for (name, p) in EQUIVALENCE {
                    tally.check(name, vec![a.clone(), b.clone()], &p);
                }
                for side in Side::BOTH {
                    let ok = t.order(side).le(k / n, k % n) == star_le(a, b, side)?;
                    tally.record("tabulated order matches the prime form", ok, || vec![a.clone(), b.clone()]);
                }
                Ok(())
            });
        }
        over(sample_count(u) as usize, |i, t| {
            let mut rng = u.rng(i as u64, 44);
            let a = sample_matrix(u, i as u64)?;
            let b = u.random_element(&mut rng);
            let mut pairs = vec![(a, b.clone())];
            for side in Side::BOTH {
                pairs.push((random_below(u, &b, side, &mut rng)?, b.clone()));
            }
            for (a, b) in pairs {
                for (name, p) in EQUIVALENCE {
                    t.check(name, vec![a.clone(), b.clone()], &p);
                }
            }
            Ok(())
        })
    }
}

// ---------------------------------------------------------------------------

/// `a ↦ a″` and `e ↦ x e` are inverse order isomorphisms `[0, x] ≅ [0, x″]`.
pub struct IsoSuite;

fn iso_psi_phi(m: &[Matrix]) -> Result<bool> {
    let (x, a) = (&m[0], &m[1]);
    require(rle(a, x)?, "a ≤ x")?;
    Ok(psi(x, &phi(a)?)? == *a)
}

fn iso_phi_psi(m: &[Matrix]) -> Result<bool> {
    let (x, e) = (&m[0], as_projection(&m[1])?);
    let a = psi(x, &e)?;
    Ok(rle(&a, x)? && phi(&a)? == e)
}

fn iso_order(m: &[Matrix]) -> Result<bool> {
    let (x, e, f) = (&m[0], as_projection(&m[1])?, as_projection(&m[2])?);
    let (a, b) = (psi(x, &e)?, psi(x, &f)?);
    Ok(proj_le(&e, &f)? == rle(&a, &b)?)
}

const PSI_PHI: &str = "psi(x, phi(a)) = a";
const PHI_PSI: &str = "psi(x, e) ≤ x and phi(psi(x, e)) = e";
const ISO_ORDER: &str = "e ≤ f iff psi(x, e) ≤ psi(x, f)";

impl Suite for IsoSuite {
    fn name(&self) -> &'static str {
        "iso"
    }

    fn run(&self, u: &RingUniverse) -> Result<Tally> {
        if u.is_exhaustive() {
            let t = table(u)?;
            return over(t.len(), |i, tally| {
                let x = t.at(i);
                let seg = t.right.down_set(i);
                let xd = t.right_double(i);
                let mut pseg = Vec::new();
                for &p in &t.projections {
                    let e = as_projection(t.at(p))?;
                    if proj_le(&e, xd)? {
                        pseg.push(e);
                    }
                }
                tally.record("|[0, x]| = |[0, x″]|", seg.len() == pseg.len(), || vec![x.clone()]);
                for &a in &seg {
                    tally.check(PSI_PHI, vec![x.clone(), t.at(a).clone()], &iso_psi_phi);
                }
                for e in &pseg {
                    tally.check(PHI_PSI, vec![x.clone(), e.matrix().clone()], &iso_phi_psi);
                    for f in &pseg {
                        tally.check(ISO_ORDER, vec![x.clone(), e.matrix().clone(), f.matrix().clone()], &iso_order);
                    }
                }
                let brute: Vec<Matrix> = seg.iter().map(|&a| t.at(a).clone()).collect();
                tally.record("initial segment matches brute force", initial_segment(x)? == brute, || vec![x.clone()]);
                Ok(())
            });
        }
        over(sample_count(u) as usize, |i, t| {
            let mut rng = u.rng(i as u64, 55);
            let x = sample_matrix(u, i as u64)?;
            let xd = phi(&x)?;
            let e = u.random_subprojection(&xd, &mut rng)?;
            let f = u.random_subprojection(&xd, &mut rng)?;
            let g = u.random_subprojection(&f, &mut rng)?;
            for p in [&e, &f, &g, &xd] {
                t.check(PHI_PSI, vec![x.clone(), p.matrix().clone()], &iso_phi_psi);
                t.check(PSI_PHI, vec![x.clone(), &x * p.matrix()], &iso_psi_phi);
            }
            for (p, q) in [(&e, &f), (&f, &e), (&g, &f), (&f, &g)] {
                t.check(ISO_ORDER, vec![x.clone(), p.matrix().clone(), q.matrix().clone()], &iso_order);
            }
            Ok(())
        })
    }
}

// ---------------------------------------------------------------------------

/// Segment meets and joins are the meets and joins of the whole ring and do
/// not depend on the chosen common bound.
pub struct MeetJoinSuite;

fn segment_pair(m: &[Matrix]) -> Result<(Matrix, Matrix)> {
    let (x, a, b) = (&m[0], &m[1], &m[2]);
    require(rle(a, x)? && rle(b, x)?, "a, b ≤ x")?;
    Ok((segment_meet(x, a, b)?, segment_join(x, a, b)?))
}

fn meet_join_bounds(m: &[Matrix]) -> Result<bool> {
    let (x, a, b) = (&m[0], &m[1], &m[2]);
    let (meet, join) = segment_pair(m)?;
    Ok(rle(&meet, a)? && rle(&meet, b)? && rle(a, &join)? && rle(b, &join)? && rle(&join, x)?)
}

fn meet_is_greatest(m: &[Matrix]) -> Result<bool> {
    let c = &m[3];
    require(rle(c, &m[1])? && rle(c, &m[2])?, "c ≤ a, b")?;
    rle(c, &segment_pair(m)?.0)
}

fn join_is_least(m: &[Matrix]) -> Result<bool> {
    let d = &m[3];
    require(rle(&m[1], d)? && rle(&m[2], d)? && rle(d, &m[0])?, "a, b ≤ d ≤ x")?;
    rle(&segment_pair(m)?.1, d)
}

fn bounded_meet_agrees(m: &[Matrix]) -> Result<bool> {
    Ok(bounded_meet(&m[1], &m[2])? == segment_pair(m)?.0)
}

fn bound_independent(m: &[Matrix]) -> Result<bool> {
    let (x, y, a, b) = (&m[0], &m[1], &m[2], &m[3]);
    let first = segment_pair(&[x.clone(), a.clone(), b.clone()])?;
    let second = segment_pair(&[y.clone(), a.clone(), b.clone()])?;
    Ok(first == second)
}

impl Suite for MeetJoinSuite {
    fn name(&self) -> &'static str {
        "meetjoin"
    }

    fn run(&self, u: &RingUniverse) -> Result<Tally> {
        if u.is_exhaustive() {
            let t = table(u)?;
            let n = t.len();
            let ord = &t.right;
            let expected = |a: &Matrix, b: &Matrix| -> Option<(usize, usize)> {
                let (i, j) = (t.index_of(a)?, t.index_of(b)?);
                Some((ord.meet(i, j)?, ord.join(i, j)?))
            };
            let ring_meet_join = |m: &[Matrix]| {
                let (meet, join) = segment_pair(m)?;
                Ok(expected(&m[1], &m[2]) == Some((t.index_of(&meet).unwrap(), t.index_of(&join).unwrap())))
            };
            let ring_bounded_meet = |m: &[Matrix]| {
                let meet = bounded_meet(&m[0], &m[1])?;
                Ok(expected(&m[0], &m[1]).map(|e| e.0) == t.index_of(&meet))
            };
            return over(n * n, |k, tally| {
                let (i, j) = (k / n, k % n);
                let bounds = ord.upper_bounds(i, j);
                if bounds.is_empty() {
                    return Ok(());
                }
                let (a, b) = (t.at(i), t.at(j));
                tally.record("bounded pairs have a meet and a join", expected(a, b).is_some(), || {
                    vec![a.clone(), b.clone()]
                });
                tally.check("bounded meet is the ring meet", vec![a.clone(), b.clone()], &ring_bounded_meet);
                for y in bounds {
                    tally.check(
                        "segment meet and join are the ring meet and join",
                        vec![t.at(y).clone(), a.clone(), b.clone()],
                        &ring_meet_join,
                    );
                }
                Ok(())
            });
        }
        over(sample_count(u) as usize, |i, t| {
            let mut rng = u.rng(i as u64, 66);
            let x = sample_matrix(u, i as u64)?;
            let q = primes(&x)?;
            let e = u.random_subprojection(&q.right_double, &mut rng)?;
            let f = u.random_subprojection(&q.right_double, &mut rng)?;
            let (a, b) = (&x * e.matrix(), &x * f.matrix());
            let xab = vec![x.clone(), a.clone(), b.clone()];
            t.check("segment meet and join bound the pair", xab.clone(), &meet_join_bounds);
            t.check("bounded meet equals the segment meet", xab.clone(), &bounded_meet_agrees);

            let g = u.random_subprojection(&proj_meet(&e, &f)?, &mut rng)?;
            let mut with_c = xab.clone();
            with_c.push(&x * g.matrix());
            t.check("lower bounds lie below the segment meet", with_c, &meet_is_greatest);

            let h = proj_join(&proj_join(&e, &f)?, &u.random_subprojection(&q.right_double, &mut rng)?)?;
            let mut with_d = xab;
            with_d.push(&x * h.matrix());
            t.check("upper bounds below x lie above the segment join", with_d, &join_is_least);

            // y = x + v u* with v ∈ ran x‵ and u ∈ ran x′ lies above x
            let v = q.left_prime.matrix() * &u.random_element(&mut rng);
            let w = q.right_prime.matrix() * &u.random_element(&mut rng);
            let y = &x + &(&v * &w.star());
            t.check("segment meet and join do not depend on the bound", vec![x, y, a, b], &bound_independent);
            Ok(())
        })
    }
}

// ---------------------------------------------------------------------------

/// The projection lattice is orthomodular, and so is every segment `[0, x]`.
pub struct OrthomodularSuite;

const PROJECTION_PAIRS: [(&str, Property); 5] = [
    ("De Morgan laws", |m| {
        let (e, f) = (as_projection(&m[0])?, as_projection(&m[1])?);
        let (eo, fo) = (proj_ortho(&e), proj_ortho(&f));
        Ok(proj_ortho(&proj_meet(&e, &f)?) == proj_join(&eo, &fo)?
            && proj_ortho(&proj_join(&e, &f)?) == proj_meet(&eo, &fo)?)
    }),
    ("e f = 0 iff f e = 0", |m| Ok((&m[0] * &m[1]).is_zero() == (&m[1] * &m[0]).is_zero())),
    ("e ≤ f iff e f‵ = 0 iff f′ e = 0", |m| {
        let (e, f) = (as_projection(&m[0])?, as_projection(&m[1])?);
        let qf = primes(f.matrix())?;
        let le = proj_le(&e, &f)?;
        Ok(le == (e.matrix() * qf.left_prime.matrix()).is_zero() && le == (qf.right_prime.matrix() * e.matrix()).is_zero())
    }),
    ("orthocomplement laws", |m| {
        let (e, f) = (as_projection(&m[0])?, as_projection(&m[1])?);
        let eo = proj_ortho(&e);
        let reverses = !proj_le(&e, &f)? || proj_le(&proj_ortho(&f), &eo)?;
        Ok(proj_meet(&e, &eo)?.matrix().is_zero()
            && proj_join(&e, &eo)?.matrix().is_identity()
            && proj_ortho(&eo) == e
            && reverses)
    }),
    ("orthomodular law", |m| {
        let (e, f) = (as_projection(&m[0])?, as_projection(&m[1])?);
        require(proj_le(&e, &f)?, "e ≤ f")?;
        Ok(f == proj_join(&e, &proj_meet(&f, &proj_ortho(&e))?)?)
    }),
];

fn interval_law(m: &[Matrix]) -> Result<bool> {
    let (x, a, b) = (&m[0], &m[1], &m[2]);
    require(rle(a, b)? && rle(b, x)?, "a ≤ b ≤ x")?;
    let inner = segment_meet(x, b, &(x - a))?;
    Ok(*b == segment_join(x, a, &inner)?)
}

fn interval_complement(m: &[Matrix]) -> Result<bool> {
    let (x, a) = (&m[0], &m[1]);
    require(rle(a, x)?, "a ≤ x")?;
    let c = x - a;
    Ok(rle(&c, x)? && segment_join(x, a, &c)? == *x && segment_meet(x, a, &c)?.is_zero())
}

const INTERVAL_LAW: &str = "a ≤ b ≤ x implies b = a ⋎ (b ⋏ (x - a))";
const INTERVAL_COMPLEMENT: &str = "a ⋎ (x - a) = x and a ⋏ (x - a) = 0";

impl Suite for OrthomodularSuite {
    fn name(&self) -> &'static str {
        "orthomodular"
    }

    fn run(&self, u: &RingUniverse) -> Result<Tally> {
        if u.is_exhaustive() {
            let t = table(u)?;
            let plist: Vec<Projection> = t.projections.iter().map(|&i| as_projection(t.at(i))).collect::<Result<_>>()?;
            let ptable = PosetTable::build(plist.clone(), |e, f| e.le(f).unwrap_or(false));
            let position = |m: &Matrix| plist.iter().position(|p| p.matrix() == m);
            let brute = |m: &[Matrix]| {
                let (e, f) = (as_projection(&m[0])?, as_projection(&m[1])?);
                let (i, j) = (position(&m[0]).unwrap(), position(&m[1]).unwrap());
                let meet = position(proj_meet(&e, &f)?.matrix());
                let join = position(proj_join(&e, &f)?.matrix());
                Ok(ptable.meet(i, j) == meet && ptable.join(i, j) == join)
            };
            let mut tally = Tally::default();
            tally.record("projections form a lattice", ptable.is_lattice(), Vec::new);
            for e in &plist {
                for f in &plist {
                    let ef = vec![e.matrix().clone(), f.matrix().clone()];
                    tally.check("meet and join match brute force", ef.clone(), &brute);
                    for (name, p) in PROJECTION_PAIRS {
                        if name == "orthomodular law" && !e.le(f)? {
                            continue;
                        }
                        tally.check(name, ef.clone(), &p);
                    }
                }
            }
            let segments = over(t.len(), |i, tally| {
                let x = t.at(i);
                for b in t.right.down_set(i) {
                    tally.check(INTERVAL_COMPLEMENT, vec![x.clone(), t.at(b).clone()], &interval_complement);
                    for a in t.right.down_set(b) {
                        tally.check(INTERVAL_LAW, vec![x.clone(), t.at(a).clone(), t.at(b).clone()], &interval_law);
                    }
                }
                Ok(())
            })?;
            return Ok(tally.merge(segments));
        }
        over(sample_count(u) as usize, |i, t| {
            let mut rng = u.rng(i as u64, 77);
            let e = random_projection(u, &mut rng)?;
            let f = random_projection(u, &mut rng)?;
            let g = u.random_subprojection(&f, &mut rng)?;
            for (p, q) in [(&e, &f), (&f, &e), (&g, &f), (&f, &g)] {
                for (name, prop) in PROJECTION_PAIRS {
                    if name == "orthomodular law" && !p.le(q)? {
                        continue;
                    }
                    t.check(name, vec![p.matrix().clone(), q.matrix().clone()], &prop);
                }
            }
            let x = sample_matrix(u, i as u64)?;
            let xd = phi(&x)?;
            let fx = u.random_subprojection(&xd, &mut rng)?;
            let gx = u.random_subprojection(&fx, &mut rng)?;
            let (a, b) = (&x * gx.matrix(), &x * fx.matrix());
            t.check(INTERVAL_LAW, vec![x.clone(), a.clone(), b.clone()], &interval_law);
            t.check(INTERVAL_COMPLEMENT, vec![x.clone(), a], &interval_complement);
            t.check(INTERVAL_COMPLEMENT, vec![x, b], &interval_complement);
            Ok(())
        })
    }
}

// ---------------------------------------------------------------------------

/// `0` is least, left invertible elements are maximal, `a ≤ 1` exactly for
/// projections, and on projections the star orders are the projection order.
pub struct MaximalSuite;

const MAXIMAL_SINGLES: [(&str, Property); 2] = [
    ("0 ≤ a", |m| {
        let zero = Matrix::zeros(m[0].field(), m[0].rows(), m[0].cols());
        Ok(star_le(&zero, &m[0], Side::Right)? && star_le(&zero, &m[0], Side::Left)?)
    }),
    ("a ≤ 1 iff a is a projection", |m| {
        let one = Matrix::identity(m[0].field(), m[0].rows());
        let projection = m[0].is_idempotent() && m[0].is_self_adjoint();
        Ok(star_le(&m[0], &one, Side::Right)? == projection && star_le(&m[0], &one, Side::Left)? == projection)
    }),
];

fn projection_orders_agree(m: &[Matrix]) -> Result<bool> {
    let (e, f) = (as_projection(&m[0])?, as_projection(&m[1])?);
    let le = proj_le(&e, &f)?;
    Ok(star_le(&m[0], &m[1], Side::Right)? == le && star_le(&m[0], &m[1], Side::Left)? == le)
}

fn invertible_is_maximal(m: &[Matrix]) -> Result<bool> {
    let (a, z) = (&m[0], &m[1]);
    require(a.rank() == a.rows(), "a invertible")?;
    Ok(a == z || !(star_le(a, z, Side::Right)? || star_le(a, z, Side::Left)?))
}

/// `a < a + v u*` for `v ∈ ran a‵`, `u ∈ ran a′` whenever `v u* ≠ 0`.
fn deficient_not_maximal(m: &[Matrix]) -> Result<bool> {
    let (a, r, s) = (&m[0], &m[1], &m[2]);
    let q = primes(a)?;
    let y = a + &(&(q.left_prime.matrix() * r) * &(q.right_prime.matrix() * s).star());
    require(y != *a, "v u* ≠ 0")?;
    Ok(star_le(a, &y, Side::Right)? && star_le(a, &y, Side::Left)?)
}

const PROJECTION_ORDERS: &str = "on projections both star orders are the projection order";
const INVERTIBLE: &str = "left invertible elements are maximal";
const DEFICIENT: &str = "elements without a one-sided inverse are not maximal";

impl Suite for MaximalSuite {
    fn name(&self) -> &'static str {
        "maximal"
    }

    fn run(&self, u: &RingUniverse) -> Result<Tally> {
        if u.is_exhaustive() {
            let t = table(u)?;
            let n = t.len();
            let zero = t.index_of(&u.descriptor.zero());
            let mut tally = Tally::default();
            for side in Side::BOTH {
                let ord = t.order(side);
                let least: Vec<usize> = (0..n).filter(|&i| ord.up_set(i).len() == n).collect();
                tally.record(&format!("0 is the unique least element of the {side} order"), least.len() == 1 && zero == ord.least(), Vec::new);
            }
            let rest = over(n, |i, tally| {
                let a = t.at(i);
                for (name, p) in MAXIMAL_SINGLES {
                    tally.check(name, vec![a.clone()], &p);
                }
                let maximal = t.right.up_set(i).len() == 1;
                if a.rank() == u.descriptor.size {
                    let both = maximal && t.left.up_set(i).len() == 1;
                    tally.record(INVERTIBLE, both, || vec![a.clone()]);
                } else {
                    tally.record(DEFICIENT, !maximal, || vec![a.clone()]);
                }
                let agrees = match is_maximal(a)? {
                    Maximality::Maximal => maximal,
                    Maximality::NotMaximal(z) => !maximal && z != *a && rle(a, &z)?,
                    Maximality::Unknown => false,
                };
                tally.record("is_maximal matches brute force", agrees, || vec![a.clone()]);
                Ok(())
            })?;
            let mut pairs = Tally::default();
            for &e in &t.projections {
                for &f in &t.projections {
                    pairs.check(PROJECTION_ORDERS, vec![t.at(e).clone(), t.at(f).clone()], &projection_orders_agree);
                }
            }
            return Ok(tally.merge(rest).merge(pairs));
        }
        over(sample_count(u) as usize, |i, t| {
            let mut rng = u.rng(i as u64, 88);
            let a = sample_matrix(u, i as u64)?;
            let e = random_projection(u, &mut rng)?;
            let f = random_projection(u, &mut rng)?;
            let g = u.random_subprojection(&f, &mut rng)?;
            for m in [&a, e.matrix()] {
                for (name, p) in MAXIMAL_SINGLES {
                    t.check(name, vec![m.clone()], &p);
                }
            }
            for (p, q) in [(&e, &f), (&g, &f), (&f, &g)] {
                t.check(PROJECTION_ORDERS, vec![p.matrix().clone(), q.matrix().clone()], &projection_orders_agree);
            }
            let (r, s) = (u.random_element(&mut rng), u.random_element(&mut rng));
            if a.rank() == u.descriptor.size {
                let z = u.random_element(&mut rng);
                t.check(INVERTIBLE, vec![a.clone(), z], &invertible_is_maximal);
                t.record("is_maximal recognises invertible elements", is_maximal(&a)? == Maximality::Maximal, || {
                    vec![a.clone()]
                });
            } else {
                let q = primes(&a)?;
                if !(&(q.left_prime.matrix() * &r) * &(q.right_prime.matrix() * &s).star()).is_zero() {
                    t.check(DEFICIENT, vec![a, r, s], &deficient_not_maximal);
                }
            }
            Ok(())
        })
    }
}
