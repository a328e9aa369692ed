//! Independence systems: uniform and partition matroids, intersections of
//! systems, and oracle-backed custom systems, plus exhaustive verifiers for
//! the matroid, k-extendible and k-system properties.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{Element, ElementSet, GroundSet};
use crate::value::{self, Value};

/// Cap for the exhaustive verifiers, which tabulate all `2^n` subsets.
pub const DEFAULT_VERIFY_CAP: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionMatroid {
    parts: Vec<Vec<Element>>,
    capacities: Vec<usize>,
    part_of: Vec<Option<usize>>,
}

impl PartitionMatroid {
    /// Parts must be pairwise disjoint; elements in no part are unconstrained.
    pub fn new(n: usize, parts: Vec<Vec<Element>>, capacities: Vec<usize>) -> Result<Self> {
        if capacities.len() != parts.len() {
            return Err(Error::InvalidInstance(format!(
                "{} parts but {} capacities",
                parts.len(),
                capacities.len()
            )));
        }
        let mut part_of = vec![None; n];
        let mut parts = parts;
        for (i, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            for &u in part.iter() {
                if u >= n {
                    return Err(Error::InvalidElement { id: u, n });
                }
                if part_of[u].replace(i).is_some() {
                    return Err(Error::InvalidInstance(format!(
                        "element {u} appears in more than one part"
                    )));
                }
            }
        }
        Ok(Self {
            parts,
            capacities,
            part_of,
        })
    }

    /// Capacity one everywhere.
    pub fn unit(n: usize, parts: Vec<Vec<Element>>) -> Result<Self> {
        let caps = vec![1; parts.len()];
        Self::new(n, parts, caps)
    }

    /// Groups elements by a key; one part per distinct key, in order of
    /// first appearance of the key in ascending element order.
    pub fn by_key<K: Eq + std::hash::Hash>(n: usize, key: impl Fn(Element) -> K) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut parts: Vec<Vec<Element>> = Vec::new();
        for u in 0..n {
            let next = parts.len();
            let i = *index.entry(key(u)).or_insert(next);
            if i == parts.len() {
                parts.push(Vec::new());
            }
            parts[i].push(u);
        }
        Self::unit(n, parts).expect("grouping by key yields disjoint parts")
    }

    pub fn parts(&self) -> &[Vec<Element>] {
        &self.parts
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }

    fn admits(&self, set: &ElementSet) -> bool {
        let mut used = vec![0usize; self.parts.len()];
        for u in set.iter() {
            if let Some(Some(p)) = self.part_of.get(u) {
                used[*p] += 1;
                if used[*p] > self.capacities[*p] {
                    return false;
                }
            }
        }
        true
    }
}

pub type IndependenceFn = dyn Fn(&ElementSet) -> bool + Send + Sync;

/// Oracle-only system. Hereditariness is the caller's contract.
#[derive(Clone)]
pub struct CustomSystem {
    /// Declared extendibility parameter, if known.
    pub k: Option<usize>,
    pub oracle: Arc<IndependenceFn>,
}

impl fmt::Debug for CustomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomSystem").field("k", &self.k).finish()
    }
}

#[derive(Clone, Debug)]
pub enum Constraint {
    Uniform { k: usize },
    Partition(PartitionMatroid),
    Intersection(Vec<Constraint>),
    Custom(CustomSystem),
}

impl Constraint {
    pub fn uniform(k: usize) -> Self {
        Constraint::Uniform { k }
    }

    /// Membership test without query accounting.
    pub fn admits(&self, set: &ElementSet) -> bool {
        match self {
            Constraint::Uniform { k } => set.len() <= *k,
            Constraint::Partition(p) => p.admits(set),
            Constraint::Intersection(of) => of.iter().all(|c| c.admits(set)),
            Constraint::Custom(c) => (c.oracle)(set),
        }
    }

    /// `k` such that the system is k-extendible: 1 for a matroid, the number
    /// of matroids for an intersection (nested intersections are flattened).
    pub fn extendibility(&self) -> Option<usize> {
        match self {
            Constraint::Uniform { .. } | Constraint::Partition(_) => Some(1),
            Constraint::Intersection(of) => of
                .iter()
                .map(Constraint::extendibility)
                .sum::<Option<usize>>()
                .map(|k| k.max(1)),
            Constraint::Custom(c) => c.k,
        }
    }

    /// True for kinds whose brute-force search is cheap to prune.
    pub fn is_structured(&self) -> bool {
        match self {
            Constraint::Uniform { .. } | Constraint::Partition(_) => true,
            Constraint::Intersection(of) => of.iter().all(Constraint::is_structured),
            Constraint::Custom(_) => false,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        match self {
            Constraint::Partition(p) if p.part_of.len() != n => Err(Error::InvalidInstance(format!(
                "partition matroid built for {} elements, ground set has {n}",
                p.part_of.len()
            ))),
            Constraint::Intersection(of) => of.iter().try_for_each(|c| c.check(n)),
            _ => Ok(()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum ConstraintRepr {
    Uniform {
        k: usize,
    },
    Partition {
        parts: Vec<Vec<Element>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        capacities: Option<Vec<usize>>,
    },
    Intersection {
        of: Vec<ConstraintRepr>,
    },
    Custom,
}

impl ConstraintRepr {
    fn from_constraint(c: &Constraint) -> Self {
        match c {
            Constraint::Uniform { k } => ConstraintRepr::Uniform { k: *k },
            Constraint::Partition(p) => ConstraintRepr::Partition {
                parts: p.parts.clone(),
                capacities: Some(p.capacities.clone()),
            },
            Constraint::Intersection(of) => ConstraintRepr::Intersection {
                of: of.iter().map(Self::from_constraint).collect(),
            },
            Constraint::Custom(_) => ConstraintRepr::Custom,
        }
    }

    fn into_constraint(self, n: usize) -> Result<Constraint> {
        Ok(match self {
            ConstraintRepr::Uniform { k } => Constraint::Uniform { k },
            ConstraintRepr::Partition { parts, capacities } => {
                let caps = capacities.unwrap_or_else(|| vec![1; parts.len()]);
                Constraint::Partition(PartitionMatroid::new(n, parts, caps)?)
            }
            ConstraintRepr::Intersection { of } => Constraint::Intersection(
                of.into_iter()
                    .map(|c| c.into_constraint(n))
                    .collect::<Result<_>>()?,
            ),
            ConstraintRepr::Custom => {
                return Err(Error::InvalidInstance(
                    "custom constraints cannot be loaded from a file".into(),
                ))
            }
        })
    }
}

/// Serialized form of a constraint. Loading needs the ground-set size.
pub fn constraint_to_json(c: &Constraint) -> serde_json::Value {
    serde_json::to_value(ConstraintRepr::from_constraint(c)).expect("constraint serializes")
}

pub fn constraint_from_json(n: usize, v: serde_json::Value) -> Result<Constraint> {
    let repr: ConstraintRepr = serde_json::from_value(v)?;
    repr.into_constraint(n)
}

/// A constraint over a concrete ground set, with an independence-query counter.
pub struct IndependenceSystem {
    n: usize,
    constraint: Constraint,
    queries: AtomicU64,
}

impl IndependenceSystem {
    pub fn new(n: usize, constraint: Constraint) -> Result<Self> {
        constraint.check(n)?;
        Ok(Self {
            n,
            constraint,
            queries: AtomicU64::new(0),
        })
    }

    pub fn uniform(n: usize, k: usize) -> Self {
        Self::new(n, Constraint::Uniform { k }).expect("uniform constraints are always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.n)
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    pub fn uniform_rank(&self) -> Option<usize> {
        match self.constraint {
            Constraint::Uniform { k } => Some(k),
            _ => None,
        }
    }

    pub fn extendibility(&self) -> Option<usize> {
        self.constraint.extendibility()
    }

    /// Independence oracle; an intersection counts as a single query.
    pub fn is_independent(&self, set: &ElementSet) -> bool {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.constraint.admits(set)
    }

    pub fn try_is_independent(&self, set: &ElementSet) -> Result<bool> {
        self.ground().check(set)?;
        Ok(self.is_independent(set))
    }

    /// Uncounted membership test for verifiers and brute force.
    pub fn admits(&self, set: &ElementSet) -> bool {
        self.constraint.admits(set)
    }

    /// `S` is a base iff no `u ∉ S` keeps `S + u` independent. Candidates
    /// are scanned in ascending id and the scan stops at the first one.
    pub fn is_base(&self, set: &ElementSet) -> Result<bool> {
        if !self.try_is_independent(set)? {
            return Err(Error::Precondition(format!(
                "{set:?} is not independent, so it cannot be a base"
            )));
        }
        Ok(self.is_base_unchecked(set))
    }

    pub(crate) fn is_base_unchecked(&self, set: &ElementSet) -> bool {
        (0..self.n)
            .filter(|&u| !set.contains(u))
            .all(|u| !self.is_independent(&set.with(u)))
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }
}

impl fmt::Debug for IndependenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndependenceSystem")
            .field("n", &self.n)
            .field("constraint", &self.constraint)
            .finish()
    }
}

/// Outcome of an exhaustive property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    fn pass() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    fn fail(w: W) -> Self {
        Self {
            holds: false,
            witness: Some(w),
        }
    }
}

/// Violation of k-extendibility: `T ⊆ S ∈ I`, `T + u ∈ I`, and no
/// `Y ⊆ S \ T` with `|Y| ≤ k` has `S \ Y + u ∈ I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendibilityWitness {
    pub s: ElementSet,
    pub t: ElementSet,
    pub u: Element,
}

/// Membership of every subset, by bitmask.
struct IndependenceTable {
    n: usize,
    independent: Vec<bool>,
}

impl IndependenceTable {
    fn build(sys: &IndependenceSystem, cap: usize, what: &'static str) -> Result<Self> {
        let n = sys.n();
        if n > cap || n > 30 {
            return Err(Error::SizeLimit {
                what,
                size: n,
                cap: cap.min(30),
            });
        }
        let independent = (0..1u64 << n)
            .map(|m| sys.admits(&ElementSet::from_mask(m, n)))
            .collect();
        Ok(Self { n, independent })
    }

    fn get(&self, mask: u64) -> bool {
        self.independent[mask as usize]
    }

    fn independent_masks(&self) -> impl Iterator<Item = u64> + '_ {
        (0..1u64 << self.n).filter(move |&m| self.get(m))
    }

    fn set(&self, mask: u64) -> ElementSet {
        ElementSet::from_mask(mask, self.n)
    }
}

/// Iterates over the submasks of `mask`, including 0 and `mask` itself.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// Every subset of an independent set is independent.
pub fn verify_hereditary(sys: &IndependenceSystem, cap: usize) -> Result<Verdict<(ElementSet, Element)>> {
    let table = IndependenceTable::build(sys, cap, "hereditary check")?;
    if !table.get(0) {
        return Ok(Verdict::fail((ElementSet::new(), usize::MAX)));
    }
    for s in table.independent_masks() {
        for u in 0..table.n {
            if s & (1 << u) != 0 && !table.get(s & !(1 << u)) {
                return Ok(Verdict::fail((table.set(s), u)));
            }
        }
    }
    Ok(Verdict::pass())
}

pub fn verify_k_extendible(
    sys: &IndependenceSystem,
    k: usize,
    cap: usize,
) -> Result<Verdict<ExtendibilityWitness>> {
    let table = IndependenceTable::build(sys, cap, "k-extendibility check")?;
    let n = table.n;
    let independent: Vec<u64> = table.independent_masks().collect();
    for &s in &independent {
        for t in submasks(s) {
            for u in (0..n).filter(|&u| s & (1 << u) == 0) {
                let ubit = 1u64 << u;
                if !table.get(t | ubit) {
                    continue;
                }
                let spare = s & !t;
                let ok = submasks(spare)
                    .filter(|y| y.count_ones() as usize <= k)
                    .any(|y| table.get((s & !y) | ubit));
                if !ok {
                    return Ok(Verdict::fail(ExtendibilityWitness {
                        s: table.set(s),
                        t: table.set(t),
                        u,
                    }));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// Augmentation property: for `S, T ∈ I` with `|S| > |T|` some `u ∈ S \ T`
/// has `T + u ∈ I`. The witness is the failing `(S, T)`.
pub fn verify_matroid(sys: &IndependenceSystem, cap: usize) -> Result<Verdict<(ElementSet, ElementSet)>> {
    let table = IndependenceTable::build(sys, cap, "matroid check")?;
    let independent: Vec<u64> = table.independent_masks().collect();
    for &s in &independent {
        for &t in &independent {
            if s.count_ones() <= t.count_ones() {
                continue;
            }
            let mut rest = s & !t;
            let mut ok = false;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if table.get(t | bit) {
                    ok = true;
                    break;
                }
                rest &= rest - 1;
            }
            if !ok {
                return Ok(Verdict::fail((table.set(s), table.set(t))));
            }
        }
    }
    Ok(Verdict::pass())
}

fn base_ratio(table: &IndependenceTable, s: u64) -> Value {
    let mut min = usize::MAX;
    let mut max = 0usize;
    for b in submasks(s) {
        if !table.get(b) {
            continue;
        }
        let mut rest = s & !b;
        let mut maximal = true;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if table.get(b | bit) {
                maximal = false;
                break;
            }
            rest &= rest - 1;
        }
        if maximal {
            let size = b.count_ones() as usize;
            min = min.min(size);
            max = max.max(size);
        }
    }
    if min == 0 {
        // only the empty base
        value::one()
    } else {
        value::ratio(max as i64, min as i64)
    }
}

/// Largest base size of `S` over its smallest base size (≥ 1; 1 when the
/// only base is empty).
pub fn k_system_ratio(sys: &IndependenceSystem, set: &ElementSet, cap: usize) -> Result<Value> {
    sys.ground().check(set)?;
    let table = IndependenceTable::build(sys, cap, "k-system ratio")?;
    Ok(base_ratio(&table, set.to_mask()))
}

/// Maximum of [`k_system_ratio`] over every subset of the ground set.
pub fn system_ratio(sys: &IndependenceSystem, cap: usize) -> Result<Value> {
    let table = IndependenceTable::build(sys, cap, "k-system ratio")?;
    Ok((0..1u64 << table.n)
        .map(|s| base_ratio(&table, s))
        .max()
        .unwrap_or_else(value::one))
}
