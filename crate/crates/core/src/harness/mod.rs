//! Ring universes, generators, brute-force oracles and the suite runner.
//!
//! A [`RingUniverse`] is either an exhaustive enumeration of a finite matrix
//! ring or a seeded random sample. Every verification suite implements
//! [`Suite`] and is registered by name in a [`SuiteRegistry`].

mod poset;
mod suites;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::MatrixFile;
use crate::matrix::Matrix;
use crate::projections::{column_space_basis, projection_onto, Projection};
use crate::scalars::{FieldDescriptor, Fp, GaussianRational, Rational, Scalar};
use crate::star_ring::{pinv, primes_from_pinv, PrimeQuadruple, RingDescriptor, Side};

pub use poset::{PosetSummary, PosetTable};
pub use suites::{
    EquivalenceSuite, IsoSuite, MaximalSuite, MeetJoinSuite, OrderAxiomsSuite, OrthomodularSuite, PenroseSuite,
    PrimesSuite, ProductPrimesSuite,
};

/// Default number of sampled cases.
pub const DEFAULT_SAMPLES: u64 = 1000;
/// Default bound on sampled numerators and denominators.
pub const DEFAULT_ENTRY_BOUND: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { count: u64, seed: u64, entry_bound: u32 },
}

/// A ring together with the way its elements are visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingUniverse {
    pub descriptor: RingDescriptor,
    pub mode: Mode,
}

impl RingUniverse {
    pub fn exhaustive(descriptor: RingDescriptor) -> Result<Self> {
        if !descriptor.enumerable {
            return Err(Error::NotEnumerable(descriptor.to_string()));
        }
        Ok(RingUniverse { descriptor, mode: Mode::Exhaustive })
    }

    pub fn sampled(descriptor: RingDescriptor, count: u64, seed: u64, entry_bound: u32) -> Self {
        RingUniverse { descriptor, mode: Mode::Sampled { count, seed, entry_bound: entry_bound.max(1) } }
    }

    pub fn is_exhaustive(&self) -> bool {
        self.mode == Mode::Exhaustive
    }

    /// Independent random stream for case `index`; `salt` separates streams
    /// used for different purposes within one case.
    pub fn rng(&self, index: u64, salt: u64) -> ChaCha8Rng {
        let seed = match self.mode {
            Mode::Sampled { seed, .. } => seed,
            Mode::Exhaustive => 0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        rng.set_stream(index);
        rng
    }

    fn entry_bound(&self) -> u32 {
        match self.mode {
            Mode::Sampled { entry_bound, .. } => entry_bound,
            Mode::Exhaustive => DEFAULT_ENTRY_BOUND,
        }
    }

    /// Random ring element drawn from `rng`.
    ///
    /// `Q(i)` numerators are uniform in `[-bound, bound]` and denominators in
    /// `[1, bound]`; `F_p` entries are uniform. Half of the draws then have
    /// between one and `n` rows overwritten by `±` copies of earlier rows or
    /// by zero rows, so rank-deficient elements are common.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Matrix {
        let field = self.descriptor.field;
        let n = self.descriptor.size;
        let bound = self.entry_bound() as i64;
        let mut m = Matrix::from_fn(field, n, n, |_, _| random_scalar(field, bound, rng));
        if rng.gen_bool(0.5) {
            let deficiency = rng.gen_range(1..=n);
            for _ in 0..deficiency {
                let target = rng.gen_range(0..n);
                let source = (target > 0 && rng.gen_bool(0.7)).then(|| rng.gen_range(0..target));
                let sign = if rng.gen_bool(0.5) { field.one() } else { -&field.one() };
                for j in 0..n {
                    let v = match source {
                        Some(s) => m.get(s, j) * &sign,
                        None => field.zero(),
                    };
                    m = m.with_entry(target, j, v);
                }
            }
        }
        m
    }

    /// Random projection `e ≤ bound`: the projection onto the column space of
    /// `bound · c` for a random `c`.
    pub fn random_subprojection(&self, bound: &Projection, rng: &mut ChaCha8Rng) -> Result<Projection> {
        let c = self.random_element(rng);
        projection_onto(&column_space_basis(&(bound.matrix() * &c)))
    }
}

fn random_scalar(field: FieldDescriptor, bound: i64, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldDescriptor::GaussianRationals => {
            let mut r = || Rational::from_pair(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound));
            let re = r();
            let im = r();
            Scalar::Qi(GaussianRational::new(re, im))
        }
        FieldDescriptor::PrimeField { p } => Scalar::Fp(Fp::new(rng.gen_range(0..p), p)),
    }
}

/// All elements of an exhaustive universe in lexicographic entry order
/// (row-major, last entry varying fastest).
pub fn enumerate_ring(u: &RingUniverse) -> Result<impl Iterator<Item = Matrix>> {
    if !u.is_exhaustive() {
        return Err(Error::PreconditionViolated("enumeration needs an exhaustive universe".into()));
    }
    let d = u.descriptor;
    let total = d.cardinality.ok_or_else(|| Error::NotEnumerable(d.to_string()))?;
    let p = d.field.modulus().ok_or_else(|| Error::NotEnumerable(d.to_string()))? as u128;
    let cells = d.size * d.size;
    Ok((0..total).map(move |mut index| {
        let mut digits = vec![0u64; cells];
        for slot in digits.iter_mut().rev() {
            *slot = (index % p) as u64;
            index /= p;
        }
        Matrix::from_fn(d.field, d.size, d.size, |i, j| Scalar::Fp(Fp::new(digits[i * d.size + j], p as u64)))
    }))
}

/// The `index`-th sampled element: deterministic in `(seed, index)`.
pub fn sample_matrix(u: &RingUniverse, index: u64) -> Result<Matrix> {
    if u.is_exhaustive() {
        return Err(Error::PreconditionViolated("sampling needs a sampled universe".into()));
    }
    Ok(u.random_element(&mut u.rng(index, 0)))
}

/// An enumerated finite ring with cached Moore-Penrose inverses, primes and
/// the tabulated right and left star orders.
pub struct RingTable {
    pub ring: RingDescriptor,
    pub elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
    pub pinvs: Vec<Matrix>,
    pub primes: Vec<PrimeQuadruple>,
    /// Indices of the projections.
    pub projections: Vec<usize>,
    pub right: PosetTable<Matrix>,
    pub left: PosetTable<Matrix>,
}

impl RingTable {
    pub fn new(ring: RingDescriptor) -> Result<Self> {
        let ring = ring.require_proper()?;
        let elements: Vec<Matrix> = enumerate_ring(&RingUniverse::exhaustive(ring)?)?.collect();
        let index: HashMap<Matrix, usize> = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let pinvs = elements.iter().map(pinv).collect::<Result<Vec<_>>>()?;
        let primes = elements
            .iter()
            .zip(&pinvs)
            .map(|(a, x)| primes_from_pinv(a, x))
            .collect::<Result<Vec<_>>>()?;
        let projections = (0..elements.len())
            .filter(|&i| elements[i].is_idempotent() && elements[i].is_self_adjoint())
            .collect();
        let lookup = |m: &Matrix| &primes[index[m]];
        let right = PosetTable::build(elements.clone(), |a, b| {
            b * lookup(a).right_double.matrix() == *a && a * lookup(b).right_double.matrix() == *a
        });
        let left = PosetTable::build(elements.clone(), |a, b| {
            lookup(a).left_double.matrix() * b == *a && lookup(b).left_double.matrix() * a == *a
        });
        Ok(RingTable { ring, elements, index, pinvs, primes, projections, right, left })
    }

    /// The table for `ring`, built once per process.
    pub fn shared(ring: RingDescriptor) -> Result<Arc<RingTable>> {
        static CACHE: OnceLock<Mutex<HashMap<RingDescriptor, Arc<RingTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("table cache").get(&ring) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(RingTable::new(ring)?);
        cache.lock().expect("table cache").insert(ring, Arc::clone(&table));
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The element at index `i`.
    pub fn at(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn order(&self, side: Side) -> &PosetTable<Matrix> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn right_double(&self, i: usize) -> &Projection {
        &self.primes[i].right_double
    }
}

/// A property violation with the (shrunk) inputs that trigger it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    #[serde(serialize_with = "serialize_inputs")]
    pub inputs: Vec<Matrix>,
    pub property: String,
}

fn serialize_inputs<S: Serializer>(inputs: &[Matrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(inputs.iter().map(MatrixFile::from_matrix))
}

/// Outcome of one suite on one universe.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Case count and failures, merged associatively across workers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub cases: u64,
    pub failures: Vec<Failure>,
}

/// A property over a tuple of matrices. `Ok(false)` and errors are failures.
pub type Check<'a> = &'a (dyn Fn(&[Matrix]) -> Result<bool> + Sync);

impl Tally {
    pub fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self
    }

    /// Evaluates `check` on `inputs`, recording a shrunk counterexample on failure.
    pub fn check(&mut self, property: &str, inputs: Vec<Matrix>, check: Check) {
        self.cases += 1;
        if matches!(check(&inputs), Ok(true)) {
            return;
        }
        let inputs = shrink(inputs, |m| match check(m) {
            Ok(ok) => !ok,
            Err(Error::PreconditionViolated(_)) => false,
            Err(_) => true,
        });
        self.failures.push(Failure { inputs, property: property.to_string() });
    }

    /// Records an outcome decided outside a [`Check`]; the inputs are kept as given.
    pub fn record(&mut self, property: &str, ok: bool, inputs: impl FnOnce() -> Vec<Matrix>) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure { inputs: inputs(), property: property.to_string() });
        }
    }
}

/// Greedily zeroes entries while the failure persists.
pub fn shrink(mut inputs: Vec<Matrix>, still_fails: impl Fn(&[Matrix]) -> bool) -> Vec<Matrix> {
    loop {
        let mut changed = false;
        for k in 0..inputs.len() {
            let (rows, cols) = inputs[k].shape();
            for i in 0..rows {
                for j in 0..cols {
                    if inputs[k].get(i, j).is_zero() {
                        continue;
                    }
                    let mut trial = inputs.clone();
                    trial[k] = inputs[k].with_entry(i, j, inputs[k].field().zero());
                    if still_fails(&trial) {
                        inputs = trial;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return inputs;
        }
    }
}

/// A named group of property checks.
pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;

    fn run(&self, universe: &RingUniverse) -> Result<Tally>;
}

/// Suites keyed by name.
pub struct SuiteRegistry {
    suites: BTreeMap<&'static str, Box<dyn Suite>>,
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        SuiteRegistry::standard()
    }
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { suites: BTreeMap::new() }
    }

    pub fn standard() -> Self {
        let mut r = SuiteRegistry::empty();
        r.register(PenroseSuite);
        r.register(PrimesSuite);
        r.register(ProductPrimesSuite);
        r.register(OrderAxiomsSuite);
        r.register(EquivalenceSuite);
        r.register(IsoSuite);
        r.register(MeetJoinSuite);
        r.register(OrthomodularSuite);
        r.register(MaximalSuite);
        r
    }

    pub fn register<S: Suite + 'static>(&mut self, suite: S) {
        self.suites.insert(suite.name(), Box::new(suite));
    }

    pub fn get(&self, name: &str) -> Result<&dyn Suite> {
        self.suites
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownSuite(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.keys().copied().collect()
    }

    pub fn run(&self, name: &str, universe: &RingUniverse) -> Result<SuiteReport> {
        let suite = self.get(name)?;
        universe.descriptor.require_proper()?;
        let start = Instant::now();
        let tally = suite.run(universe)?;
        Ok(SuiteReport {
            suite: name.to_string(),
            cases: tally.cases,
            failures: tally.failures,
            seconds: start.elapsed().as_secs_f64(),
        })
    }
}

/// Which suites to run on which universe. `"all"` selects every registered suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub universe: RingUniverse,
}

/// Runs the configured suites in name order.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    let registry = SuiteRegistry::standard();
    let mut names = Vec::new();
    for s in &config.suites {
        if s == "all" {
            names.extend(registry.names().into_iter().map(String::from));
        } else {
            registry.get(s)?;
            names.push(s.clone());
        }
    }
    names.dedup();
    names.into_iter().map(|n| registry.run(&n, &config.universe)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, n: usize) -> RingUniverse {
        RingUniverse::exhaustive(RingDescriptor::fp(p, n).unwrap()).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_ring(&f(3, 1)).unwrap().count(), 3);
        assert_eq!(enumerate_ring(&f(7, 1)).unwrap().count(), 7);
        let all: Vec<Matrix> = enumerate_ring(&f(3, 2)).unwrap().collect();
        assert_eq!(all.len(), 81);
        assert!(all.windows(2).all(|w| w[0] < w[1]), "lexicographic and distinct");
        assert!(all[0].is_zero());
        assert!(matches!(
            RingUniverse::exhaustive(RingDescriptor::qi(2)),
            Err(Error::NotEnumerable(_))
        ));
    }

    #[test]
    fn sampling_contract() {
        let u = RingUniverse::sampled(RingDescriptor::qi(3), 10, 42, 3);
        assert_eq!(sample_matrix(&u, 7).unwrap(), sample_matrix(&u, 7).unwrap());
        assert_ne!(sample_matrix(&u, 7).unwrap(), sample_matrix(&u, 8).unwrap());
        let other_seed = RingUniverse::sampled(RingDescriptor::qi(3), 10, 43, 3);
        assert_ne!(sample_matrix(&u, 7).unwrap(), sample_matrix(&other_seed, 7).unwrap());
        for i in 0..200 {
            for s in sample_matrix(&u, i).unwrap().entries() {
                let Scalar::Qi(z) = s else { panic!() };
                // reduced fractions of numerators in [-3, 3] over [1, 3] stay in that range
                for r in [&z.re, &z.im] {
                    assert!(r.numer() <= 3.into() && r.numer() >= (-3).into(), "{r}");
                    assert!(r.denom() <= 3.into());
                }
            }
        }
        assert!(sample_matrix(&f(3, 2), 0).is_err());
    }

    #[test]
    fn sampling_produces_rank_deficient_elements() {
        let u = RingUniverse::sampled(RingDescriptor::qi(3), 200, 1, 3);
        let ranks: Vec<usize> = (0..200).map(|i| sample_matrix(&u, i).unwrap().rank()).collect();
        for r in 0..=3 {
            assert!(ranks.contains(&r), "rank {r} never sampled");
        }
    }

    #[test]
    fn shrinking_zeroes_irrelevant_entries() {
        let qi = FieldDescriptor::GaussianRationals;
        let m = Matrix::from_i64(qi, &[&[1, 2], &[3, 4]]);
        // fails whenever entry (1, 0) is nonzero
        let shrunk = shrink(vec![m], |ms| !ms[0].get(1, 0).is_zero());
        assert_eq!(shrunk, vec![Matrix::from_i64(qi, &[&[0, 0], &[3, 0]])]);
    }

    #[test]
    fn unknown_suite() {
        let u = f(3, 1);
        assert!(matches!(
            SuiteRegistry::standard().run("unknown-name", &u),
            Err(Error::UnknownSuite(_))
        ));
        let cfg = SuiteConfig { suites: vec!["nope".into()], universe: u };
        assert!(matches!(run_suite(&cfg), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn report_json_shape() {
        let qi = FieldDescriptor::GaussianRationals;
        let report = SuiteReport {
            suite: "penrose".into(),
            cases: 3,
            failures: vec![Failure { inputs: vec![Matrix::identity(qi, 1)], property: "p".into() }],
            seconds: 0.5,
        };
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["suite"], "penrose");
        assert_eq!(v["cases"], 3);
        assert_eq!(v["failures"][0]["property"], "p");
        assert_eq!(v["failures"][0]["inputs"][0]["entries"][0][0], "1");
        assert_eq!(v["seconds"], 0.5);
    }

    #[test]
    fn ring_table_basics() {
        let t = RingTable::new(RingDescriptor::fp(3, 2).unwrap()).unwrap();
        assert_eq!(t.len(), 81);
        assert_eq!(t.projections.len(), 6);
        assert_eq!(t.right.least(), Some(0));
        assert!(RingTable::new(RingDescriptor::fp(5, 2).unwrap()).is_err());
    }
}
