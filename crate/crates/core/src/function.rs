//! Set functions and the weighted-hypergraph backend.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{Element, ElementSet, GroundSet};
use crate::value::{self, Value};

/// A set function `f : 2^N -> Q` over the ground set `{0, .., n - 1}`.
///
/// Implementations must be pure. Callers only pass sets inside the ground
/// set; checked entry points live on [`crate::oracle::OracleBundle`].
pub trait SetFunction: Send + Sync + fmt::Debug {
    fn ground_size(&self) -> usize;

    fn eval(&self, set: &ElementSet) -> Value;

    /// `f(u | S) = f(S + u) - f(S)`, zero when `u` is already in `S`.
    fn marginal(&self, u: Element, set: &ElementSet) -> Value {
        if set.contains(u) {
            return Value::zero();
        }
        self.eval(&set.with(u)) - self.eval(set)
    }

    /// `f(T | S) = f(S ∪ T) - f(S)`.
    fn marginal_set(&self, add: &ElementSet, set: &ElementSet) -> Value {
        if add.is_subset(set) {
            return Value::zero();
        }
        self.eval(&set.union(add)) - self.eval(set)
    }
}

impl<F: SetFunction + ?Sized> SetFunction for Arc<F> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn eval(&self, set: &ElementSet) -> Value {
        (**self).eval(set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperedge {
    pub members: ElementSet,
    #[serde(with = "value::as_string")]
    pub weight: Value,
}

/// `f(S) = Σ { w(e) : e ⊆ S }` over a list of weighted hyperedges.
///
/// The empty hyperedge is not allowed, so `f(∅) = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct HypergraphFunction {
    n: usize,
    edges: Vec<Hyperedge>,
    // members of each edge as plain id lists, for the evaluation loop
    members: Vec<Vec<Element>>,
}

impl HypergraphFunction {
    pub fn new(n: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        let ground = GroundSet::new(n);
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if e.members.is_empty() {
                return Err(Error::InvalidInstance(
                    "hypergraph functions cannot carry an empty hyperedge".into(),
                ));
            }
            ground.check(&e.members)?;
            if !seen.insert(e.members.clone()) {
                return Err(Error::InvalidInstance(format!(
                    "duplicate hyperedge {:?}",
                    e.members
                )));
            }
        }
        let members = edges.iter().map(|e| e.members.to_vec()).collect();
        Ok(Self { n, edges, members })
    }

    /// Convenience constructor from `(ids, weight)` pairs.
    pub fn from_edges<I, S>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Value)>,
        S: AsRef<[Element]>,
    {
        let edges = edges
            .into_iter()
            .map(|(ids, weight)| Hyperedge {
                members: ElementSet::from(ids.as_ref()),
                weight,
            })
            .collect();
        Self::new(n, edges)
    }

    /// The linear function with the given per-element weights.
    pub fn linear(weights: &[Value]) -> Self {
        let edges = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(u, w)| Hyperedge {
                members: ElementSet::singleton(u),
                weight: w.clone(),
            })
            .collect();
        Self::new(weights.len(), edges).expect("singleton edges are valid")
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.n)
    }

    /// Checked evaluation.
    pub fn evaluate(&self, set: &ElementSet) -> Result<Value> {
        self.ground().check(set)?;
        Ok(self.eval(set))
    }

    /// Elements sharing a non-zero hyperedge with `u`.
    ///
    /// Any `v` outside this set leaves every marginal of `u` unchanged, so
    /// the result contains the exact dependency set.
    pub fn dep_superset(&self, u: Element) -> ElementSet {
        self.co_members(u, |w| !w.is_zero())
    }

    /// Elements sharing a positive-weight hyperedge with `u`.
    ///
    /// Adding `v` to `S` changes `f(u | S)` by the total weight of the edges
    /// containing both `u` and `v` that become complete; only positive
    /// weights can raise it, so this contains the supermodular set.
    pub fn sdep_superset(&self, u: Element) -> ElementSet {
        self.co_members(u, |w| w.is_positive())
    }

    fn co_members(&self, u: Element, keep: impl Fn(&Value) -> bool) -> ElementSet {
        let mut out = ElementSet::with_capacity(self.n);
        for e in &self.edges {
            if e.members.contains(u) && keep(&e.weight) {
                out.union_with(&e.members);
            }
        }
        out.remove(u);
        out
    }
}

/// Dependency superset of `u` read off the hyperedges.
pub fn hypergraph_dep_superset(f: &HypergraphFunction, u: Element) -> ElementSet {
    f.dep_superset(u)
}

impl SetFunction for HypergraphFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, set: &ElementSet) -> Value {
        let mut total = Value::zero();
        for (edge, ids) in self.edges.iter().zip(&self.members) {
            if ids.iter().all(|&u| set.contains(u)) {
                total += &edge.weight;
            }
        }
        total
    }

    fn marginal(&self, u: Element, set: &ElementSet) -> Value {
        if set.contains(u) {
            return Value::zero();
        }
        // only edges through u can change
        let mut gain = Value::zero();
        for (edge, ids) in self.edges.iter().zip(&self.members) {
            if edge.members.contains(u) && ids.iter().all(|&v| v == u || set.contains(v)) {
                gain += &edge.weight;
            }
        }
        gain
    }
}

impl fmt::Debug for HypergraphFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HypergraphFunction")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    n: usize,
    edges: Vec<Hyperedge>,
}

impl Serialize for HypergraphFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphRepr {
            n: self.n,
            edges: self.edges.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HypergraphFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = HypergraphRepr::deserialize(d)?;
        Self::new(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// A set function given by a closure. Mostly useful in tests and for
/// custom oracles that have no succinct representation.
pub struct ClosureFunction<F> {
    n: usize,
    f: F,
}

impl<F> ClosureFunction<F>
where
    F: Fn(&ElementSet) -> Value + Send + Sync,
{
    pub fn new(n: usize, f: F) -> Self {
        Self { n, f }
    }
}

impl<F> fmt::Debug for ClosureFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosureFunction(n = {})", self.n)
    }
}

impl<F> SetFunction for ClosureFunction<F>
where
    F: Fn(&ElementSet) -> Value + Send + Sync,
{
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, set: &ElementSet) -> Value {
        (self.f)(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{int, ratio};

    fn pair() -> HypergraphFunction {
        HypergraphFunction::from_edges(2, [(vec![0], int(1)), (vec![0, 1], int(2))]).unwrap()
    }

    #[test]
    fn evaluate_sums_contained_edges() {
        let f = pair();
        assert_eq!(f.evaluate(&ElementSet::from([0])).unwrap(), int(1));
        assert_eq!(f.evaluate(&ElementSet::from([0, 1])).unwrap(), int(3));
        assert_eq!(f.evaluate(&ElementSet::new()).unwrap(), int(0));
        assert!(matches!(
            f.evaluate(&ElementSet::from([2])),
            Err(Error::InvalidElement { id: 2, n: 2 })
        ));
    }

    #[test]
    fn marginals() {
        let f = HypergraphFunction::from_edges(2, [(vec![0, 1], int(2))]).unwrap();
        assert_eq!(f.marginal(0, &ElementSet::from([1])), int(2));
        assert_eq!(f.marginal(0, &ElementSet::new()), int(0));
        assert_eq!(f.marginal(0, &ElementSet::from([0])), int(0));

        let g =
            HypergraphFunction::from_edges(2, [(vec![0], int(1)), (vec![1], int(1)), (vec![0, 1], int(3))])
                .unwrap();
        assert_eq!(g.marginal_set(&ElementSet::new(), &ElementSet::from([1])), int(0));
        assert_eq!(
            g.marginal_set(&ElementSet::from([1]), &ElementSet::from([0, 1])),
            int(0)
        );
        assert_eq!(
            g.marginal_set(&ElementSet::from([0, 1]), &ElementSet::new()),
            int(5)
        );
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(HypergraphFunction::from_edges(2, [(vec![], int(1))]).is_err());
        assert!(HypergraphFunction::from_edges(2, [(vec![0, 5], int(1))]).is_err());
        assert!(
            HypergraphFunction::from_edges(3, [(vec![0, 1], int(1)), (vec![1, 0], ratio(1, 2))]).is_err()
        );
    }

    #[test]
    fn superset_oracles() {
        let f = HypergraphFunction::from_edges(3, [(vec![0, 1], int(1))]).unwrap();
        assert_eq!(f.dep_superset(0).to_vec(), vec![1]);
        assert!(f.dep_superset(2).is_empty());
        let lin = HypergraphFunction::linear(&[int(1), int(2), int(3)]);
        assert!((0..3).all(|u| lin.dep_superset(u).is_empty()));
        let sub =
            HypergraphFunction::from_edges(2, [(vec![0], int(2)), (vec![1], int(2)), (vec![0, 1], int(-1))])
                .unwrap();
        assert_eq!(sub.dep_superset(0).to_vec(), vec![1]);
        assert!(sub.sdep_superset(0).is_empty());
    }

    #[test]
    fn json_shape() {
        let f = HypergraphFunction::from_edges(2, [(vec![1, 0], ratio(1, 2))]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"n":2,"edges":[{"members":[0,1],"weight":"1/2"}]}"#);
        let back: HypergraphFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
