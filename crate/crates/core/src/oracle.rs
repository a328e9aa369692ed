//! The oracle bundle handed to the solvers: value oracle, dependency and
//! supermodular-dependency oracles, and query counters.
//!
//! Dependency answers may be supersets of the true sets. The solvers only
//! rely on elements *outside* the answer leaving a marginal unchanged
//! (dependency) or never raising it (supermodular), so a superset keeps every
//! guarantee and only inflates the degree the run is charged with.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::degree::ExactDegrees;
use crate::error::{Error, Result};
use crate::function::{HypergraphFunction, SetFunction};
use crate::set::{Element, ElementSet, GroundSet};
use crate::value::Value;

#[derive(Default)]
pub struct QueryCounters {
    value: AtomicU64,
    dependency: AtomicU64,
    supermodular: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounts {
    pub value: u64,
    pub dependency: u64,
    pub supermodular: u64,
}

impl QueryCounters {
    pub fn snapshot(&self) -> QueryCounts {
        QueryCounts {
            value: self.value.load(Ordering::Relaxed),
            dependency: self.dependency.load(Ordering::Relaxed),
            supermodular: self.supermodular.load(Ordering::Relaxed),
        }
    }
}

/// Where the dependency sets of a bundle came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DependencySource {
    /// Exhaustive enumeration: the true sets.
    Exact,
    /// Read off hyperedges: sound supersets.
    HypergraphSuperset,
    /// Supplied with a construction whose sets are known in closed form.
    Certified,
    /// Supplied by the caller.
    Custom,
}

pub struct OracleBundle {
    function: Arc<dyn SetFunction>,
    dep: Vec<ElementSet>,
    sdep: Vec<ElementSet>,
    source: DependencySource,
    counters: QueryCounters,
}

impl OracleBundle {
    /// Checks `sdep(u) ⊆ dep(u) ⊆ N - u` for every `u`.
    pub fn new(
        function: Arc<dyn SetFunction>,
        dep: Vec<ElementSet>,
        sdep: Vec<ElementSet>,
        source: DependencySource,
    ) -> Result<Self> {
        let n = function.ground_size();
        let ground = GroundSet::new(n);
        if dep.len() != n || sdep.len() != n {
            return Err(Error::InvalidInstance(format!(
                "dependency tables must have one entry per element ({n})"
            )));
        }
        for u in 0..n {
            ground.check(&dep[u])?;
            if dep[u].contains(u) || !sdep[u].is_subset(&dep[u]) {
                return Err(Error::InvalidInstance(format!(
                    "oracle sets of element {u} must satisfy sdep ⊆ dep ⊆ N - u"
                )));
            }
        }
        Ok(Self {
            function,
            dep,
            sdep,
            source,
            counters: QueryCounters::default(),
        })
    }

    /// True dependency sets by exhaustive enumeration.
    pub fn exact(function: Arc<dyn SetFunction>, cap: usize) -> Result<Self> {
        let exact = ExactDegrees::compute(function.as_ref(), cap)?;
        Self::new(function, exact.dep, exact.sdep, DependencySource::Exact)
    }

    /// Supersets read off the hyperedges (non-zero edges for `dep`,
    /// positive edges for `sdep`).
    pub fn hypergraph(function: Arc<HypergraphFunction>) -> Self {
        let n = function.ground_size();
        let dep = (0..n).map(|u| function.dep_superset(u)).collect();
        let sdep = (0..n).map(|u| function.sdep_superset(u)).collect();
        Self::new(function, dep, sdep, DependencySource::HypergraphSuperset)
            .expect("hyperedge co-members form a valid oracle")
    }

    /// Same value oracle with the dependency tables replaced.
    pub fn with_sets(
        &self,
        dep: Vec<ElementSet>,
        sdep: Vec<ElementSet>,
        source: DependencySource,
    ) -> Result<Self> {
        Self::new(self.function.clone(), dep, sdep, source)
    }

    pub fn n(&self) -> usize {
        self.function.ground_size()
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.n())
    }

    pub fn function(&self) -> &Arc<dyn SetFunction> {
        &self.function
    }

    pub fn source(&self) -> DependencySource {
        self.source
    }

    /// Value oracle; one query.
    pub fn value(&self, set: &ElementSet) -> Value {
        self.counters.value.fetch_add(1, Ordering::Relaxed);
        self.function.eval(set)
    }

    /// Checked value oracle.
    pub fn evaluate(&self, set: &ElementSet) -> Result<Value> {
        self.ground().check(set)?;
        Ok(self.value(set))
    }

    /// `f(u | S)`; zero without querying when `u ∈ S`.
    pub fn marginal_element(&self, u: Element, set: &ElementSet) -> Result<Value> {
        self.ground().check_element(u)?;
        self.ground().check(set)?;
        if set.contains(u) {
            return Ok(Value::default());
        }
        Ok(self.value(&set.with(u)) - self.value(set))
    }

    /// `f(T | S)`.
    pub fn marginal_set(&self, add: &ElementSet, set: &ElementSet) -> Result<Value> {
        self.ground().check(add)?;
        self.ground().check(set)?;
        if add.is_subset(set) {
            return Ok(Value::default());
        }
        Ok(self.value(&set.union(add)) - self.value(set))
    }

    /// Dependency oracle `D(u)`; one query.
    pub fn dep(&self, u: Element) -> &ElementSet {
        self.counters.dependency.fetch_add(1, Ordering::Relaxed);
        &self.dep[u]
    }

    /// Supermodular oracle `D⁺(u)`; one query.
    pub fn sdep(&self, u: Element) -> &ElementSet {
        self.counters.supermodular.fetch_add(1, Ordering::Relaxed);
        &self.sdep[u]
    }

    pub fn dep_table(&self) -> &[ElementSet] {
        &self.dep
    }

    pub fn sdep_table(&self) -> &[ElementSet] {
        &self.sdep
    }

    /// Largest dependency answer, the `d` a dependency-degree run is charged with.
    pub fn max_dep(&self) -> usize {
        self.dep.iter().map(ElementSet::len).max().unwrap_or(0)
    }

    /// Largest supermodular answer.
    pub fn max_sdep(&self) -> usize {
        self.sdep.iter().map(ElementSet::len).max().unwrap_or(0)
    }

    pub fn counts(&self) -> QueryCounts {
        self.counters.snapshot()
    }
}

impl fmt::Debug for OracleBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleBundle")
            .field("function", &self.function)
            .field("source", &self.source)
            .field("max_dep", &self.max_dep())
            .field("max_sdep", &self.max_sdep())
            .finish()
    }
}
