//! Instances: a value oracle, an independence system and provenance.
//!
//! Generators live in the submodules. Every generator is a pure function of
//! its parameters (and seed), so generated files are reproducible byte for
//! byte.

mod random;
mod reductions;
mod tight;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use random::{
    random_bidders, random_graph, random_instance, random_matching, MatchingInput, RandomConstraint,
};
pub use reductions::{graph_to_uniform_instance, reduce_kdm, welfare_to_instance};
pub use tight::{
    build_tight_dependency, build_tight_supermodular, DependencyLabel, TightDependencyFunction,
    TightInstance, TightSupermodularFunction,
};

use crate::degree::{check_monotone, EXHAUSTIVE_MONOTONE_CAP};
use crate::error::{Error, Result};
use crate::function::{HypergraphFunction, SetFunction};
use crate::oracle::OracleBundle;
use crate::system::{Constraint, IndependenceSystem};
use crate::value::Value;

/// Random insertion chains tried on ground sets too large for the
/// exhaustive monotonicity scan.
const SAMPLED_MONOTONE_TRIALS: usize = 64;

/// How the value oracle of an instance is represented on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionRecord {
    Hypergraph(Arc<HypergraphFunction>),
    TightSupermodular { k: usize, d: usize, eps: Value },
    TightDependency { k: usize, d: usize, eps: Value },
}

impl FunctionRecord {
    pub fn kind(&self) -> &'static str {
        match self {
            FunctionRecord::Hypergraph(_) => "hypergraph",
            FunctionRecord::TightSupermodular { .. } => "tight-supermodular",
            FunctionRecord::TightDependency { .. } => "tight-dependency",
        }
    }
}

/// Provenance: which generator produced the instance and with what inputs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub construction: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Meta {
    pub fn new(construction: &str) -> Self {
        Self {
            construction: construction.to_string(),
            ..Self::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

pub struct Instance {
    pub record: FunctionRecord,
    pub oracle: OracleBundle,
    pub system: IndependenceSystem,
    pub meta: Meta,
}

impl Instance {
    /// Hypergraph-backed instance with superset dependency oracles.
    ///
    /// Rejects non-monotone functions (exhaustive scan up to 14 elements,
    /// sampled beyond) and negative `f(∅)`.
    pub fn from_hypergraph(f: HypergraphFunction, constraint: Constraint, meta: Meta) -> Result<Self> {
        let n = f.ground_size();
        let system = IndependenceSystem::new(n, constraint)?;
        let f = Arc::new(f);
        validate_function(f.as_ref())?;
        Ok(Self {
            record: FunctionRecord::Hypergraph(f.clone()),
            oracle: OracleBundle::hypergraph(f),
            system,
            meta,
        })
    }

    /// Rebuilds an instance from its on-disk pieces.
    pub fn from_record(record: FunctionRecord, n: usize, constraint: Constraint, meta: Meta) -> Result<Self> {
        match record {
            FunctionRecord::Hypergraph(f) => {
                if f.ground_size() != n {
                    return Err(Error::InvalidInstance(format!(
                        "function has {} elements, file declares {n}",
                        f.ground_size()
                    )));
                }
                Self::from_hypergraph((*f).clone(), constraint, meta)
            }
            FunctionRecord::TightSupermodular { k, d, ref eps } => {
                let built = build_tight_supermodular(k, d, eps.clone())?;
                built.instance.reconciled(n, constraint, meta)
            }
            FunctionRecord::TightDependency { k, d, ref eps } => {
                let built = build_tight_dependency(k, d, eps.clone())?;
                built.instance.reconciled(n, constraint, meta)
            }
        }
    }

    // A tight construction is rebuilt from its parameters; the stored
    // constraint must agree with the rebuilt one.
    fn reconciled(mut self, n: usize, constraint: Constraint, meta: Meta) -> Result<Self> {
        let stored = crate::system::constraint_to_json(&constraint);
        let rebuilt = crate::system::constraint_to_json(self.system.constraint());
        if n != self.oracle.n() || stored != rebuilt {
            return Err(Error::InvalidInstance(format!(
                "stored constraint does not match the {} construction",
                self.record.kind()
            )));
        }
        self.meta = meta;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.oracle.n()
    }

    /// Hex SHA-256 of the canonical instance content (meta excluded).
    pub fn fingerprint(&self) -> String {
        crate::format::fingerprint(self)
    }
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Instance")
            .field("record", &self.record.kind())
            .field("n", &self.n())
            .field("system", &self.system)
            .field("meta", &self.meta)
            .finish()
    }
}

pub(crate) fn validate_function(f: &dyn SetFunction) -> Result<()> {
    let empty = crate::set::ElementSet::new();
    if f.eval(&empty) < Value::default() {
        return Err(Error::InvalidInstance("f(∅) is negative".into()));
    }
    let n = f.ground_size();
    let trials = if n <= EXHAUSTIVE_MONOTONE_CAP {
        0
    } else {
        SAMPLED_MONOTONE_TRIALS
    };
    let check = check_monotone(f, trials, 0);
    match check.witness {
        Some((set, element)) => Err(Error::NotMonotone {
            set: set.to_vec(),
            element,
        }),
        None => Ok(()),
    }
}
