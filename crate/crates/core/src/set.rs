//! Ground sets and element subsets.
//!
//! Elements are dense integer ids `0..n`. An [`ElementSet`] is a bitset whose
//! equality, hashing and ordering only look at its members, so sets built
//! with different capacities still compare by content. The ordering is the
//! lexicographic order of the ascending id lists (`{} < {0} < {0, 1} < {1}`),
//! which is the tie-break order used throughout the solvers.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Element = usize;

/// The ground set `{0, .., n - 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.n
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn check(&self, set: &ElementSet) -> Result<()> {
        match set.max() {
            Some(id) if id >= self.n => Err(Error::InvalidElement { id, n: self.n }),
            _ => Ok(()),
        }
    }

    pub fn check_element(&self, id: Element) -> Result<()> {
        if id < self.n {
            Ok(())
        } else {
            Err(Error::InvalidElement { id, n: self.n })
        }
    }
}

#[derive(Clone, Default)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn singleton(u: Element) -> Self {
        let mut s = Self::with_capacity(u + 1);
        s.insert(u);
        s
    }

    /// Builds the set of the low `n` bits of `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        let mut s = Self::with_capacity(n);
        let mut m = mask;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            s.insert(u);
            m &= m - 1;
        }
        s
    }

    pub fn contains(&self, u: Element) -> bool {
        self.bits.contains(u)
    }

    pub fn insert(&mut self, u: Element) {
        if u >= self.bits.len() {
            self.bits.grow(u + 1);
        }
        self.bits.insert(u);
    }

    pub fn remove(&mut self, u: Element) {
        if u < self.bits.len() {
            self.bits.set(u, false);
        }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn max(&self) -> Option<Element> {
        self.bits.maximum()
    }

    pub fn min(&self) -> Option<Element> {
        self.bits.minimum()
    }

    /// `S + u`.
    pub fn with(&self, u: Element) -> Self {
        let mut s = self.clone();
        s.insert(u);
        s
    }

    /// `S - u`.
    pub fn without(&self, u: Element) -> Self {
        let mut s = self.clone();
        s.remove(u);
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.bits.union_with(&other.bits);
        s
    }

    pub fn union_with(&mut self, other: &Self) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.bits.intersect_with(&other.bits);
        s
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// Low-word mask of the members; only meaningful when every id is below 64.
    pub fn to_mask(&self) -> u64 {
        self.iter().fold(0u64, |m, u| {
            debug_assert!(u < 64);
            m | (1 << u)
        })
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for ElementSet {}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for u in self.iter() {
            u.hash(state);
        }
        usize::MAX.hash(state);
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut s = Self::new();
        for u in iter {
            s.insert(u);
        }
        s
    }
}

impl<const N: usize> From<[Element; N]> for ElementSet {
    fn from(ids: [Element; N]) -> Self {
        ids.into_iter().collect()
    }
}

impl From<&[Element]> for ElementSet {
    fn from(ids: &[Element]) -> Self {
        ids.iter().copied().collect()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let ids = Vec::<Element>::deserialize(deserializer)?;
        Ok(ids.into_iter().collect())
    }
}

/// Calls `visit` on every subset of `pool` in lexicographic order of the
/// ascending id lists, skipping the subtree below any subset for which
/// `visit` returns `false`. Subsets larger than `max_len` are not visited.
pub fn for_each_subset_lex<F>(pool: &[Element], max_len: usize, mut visit: F)
where
    F: FnMut(&ElementSet) -> bool,
{
    fn rec<F: FnMut(&ElementSet) -> bool>(
        pool: &[Element],
        start: usize,
        max_len: usize,
        current: &mut ElementSet,
        depth: usize,
        visit: &mut F,
    ) {
        if !visit(current) || depth == max_len {
            return;
        }
        for i in start..pool.len() {
            current.insert(pool[i]);
            rec(pool, i + 1, max_len, current, depth + 1, visit);
            current.remove(pool[i]);
        }
    }
    let mut current = ElementSet::new();
    rec(pool, 0, max_len, &mut current, 0, &mut visit);
}

/// Subsets of `pool` ordered by cardinality, then lexicographically.
pub fn subsets_by_size(pool: &[Element]) -> Vec<ElementSet> {
    let mut all = Vec::with_capacity(1 << pool.len().min(20));
    for_each_subset_lex(pool, pool.len(), |s| {
        all.push(s.clone());
        true
    });
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}
