//! Brute-force order-theoretic oracle for finite posets.
//!
//! Everything here is derived from the relation predicate alone; no ring or
//! lattice operation is called.

use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b)
        })
    }
}

/// The relation of a finite poset tabulated over its elements.
#[derive(Clone, Debug)]
pub struct PosetTable<T> {
    pub elements: Vec<T>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

/// Everything [`PosetTable::summary`] reports about a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetSummary {
    /// Covering pairs `(lower, upper)` in index order.
    pub covers: Vec<(usize, usize)>,
    /// `meets[i][j]`, `None` when the pair has no greatest lower bound.
    pub meets: Vec<Vec<Option<usize>>>,
    pub joins: Vec<Vec<Option<usize>>>,
    pub maximal: Vec<usize>,
    pub least: Option<usize>,
}

impl<T: Sync> PosetTable<T> {
    /// Tabulates `relation(a, b)` (read as `a ≤ b`) over all pairs.
    pub fn build(elements: Vec<T>, relation: impl Fn(&T, &T) -> bool + Sync) -> Self {
        let n = elements.len();
        let up: Vec<BitSet> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = BitSet::new(n);
                for j in 0..n {
                    if relation(&elements[i], &elements[j]) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        PosetTable { elements, up, down }
    }
}

impl<T> PosetTable<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// `{j : i ≤ j}`.
    pub fn up_set(&self, i: usize) -> Vec<usize> {
        self.up[i].iter().collect()
    }

    /// `{j : j ≤ i}`.
    pub fn down_set(&self, i: usize) -> Vec<usize> {
        self.down[i].iter().collect()
    }

    /// Common upper bounds of `i` and `j`.
    pub fn upper_bounds(&self, i: usize, j: usize) -> Vec<usize> {
        self.up[i].and(&self.up[j]).iter().collect()
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].len() == self.len())
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].len() == 1).collect()
    }

    /// Greatest lower bound by exhaustive search.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lower = self.down[i].and(&self.down[j]);
        let glb = lower.iter().find(|&g| lower.is_subset(&self.down[g]));
        glb
    }

    /// Least upper bound by exhaustive search.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let upper = self.up[i].and(&self.up[j]);
        let lub = upper.iter().find(|&l| upper.is_subset(&self.up[l]));
        lub
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                if i == j {
                    continue;
                }
                let between = self.up[i].and(&self.down[j]);
                if between.len() == 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn summary(&self) -> PosetSummary {
        let n = self.len();
        PosetSummary {
            covers: self.covers(),
            meets: (0..n).map(|i| (0..n).map(|j| self.meet(i, j)).collect()).collect(),
            joins: (0..n).map(|i| (0..n).map(|j| self.join(i, j)).collect()).collect(),
            maximal: self.maximal(),
            least: self.least(),
        }
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.meet(i, j).is_some() && self.join(i, j).is_some()))
    }
}
