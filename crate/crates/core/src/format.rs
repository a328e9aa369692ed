//! On-disk instance format.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "n": 4,
//!   "function": {"type": "hypergraph", "edges": [{"members": [0, 1], "weight": "3/2"}]},
//!   "constraint": {"type": "uniform", "k": 2},
//!   "meta": {"construction": "random", "params": {"d": 1}, "seed": 7}
//! }
//! ```
//!
//! Tight constructions store only their parameters
//! (`{"type": "tight-supermodular", "k": 1, "d": 2, "eps": "1/10"}`) and are
//! rebuilt on load.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::construct::{FunctionRecord, Instance, Meta};
use crate::error::{Error, Result};
use crate::function::{Hyperedge, HypergraphFunction};
use crate::system::{constraint_from_json, constraint_to_json};
use crate::value::{self, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum FunctionFile {
    Hypergraph {
        edges: Vec<Hyperedge>,
    },
    TightSupermodular {
        k: usize,
        d: usize,
        #[serde(with = "value::as_string")]
        eps: Value,
    },
    TightDependency {
        k: usize,
        d: usize,
        #[serde(with = "value::as_string")]
        eps: Value,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema: u32,
    pub n: usize,
    pub function: FunctionFile,
    pub constraint: serde_json::Value,
    pub meta: Meta,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let function = match &inst.record {
            FunctionRecord::Hypergraph(f) => FunctionFile::Hypergraph {
                edges: f.edges().to_vec(),
            },
            FunctionRecord::TightSupermodular { k, d, eps } => FunctionFile::TightSupermodular {
                k: *k,
                d: *d,
                eps: eps.clone(),
            },
            FunctionRecord::TightDependency { k, d, eps } => FunctionFile::TightDependency {
                k: *k,
                d: *d,
                eps: eps.clone(),
            },
        };
        Self {
            schema: SCHEMA_VERSION,
            n: inst.n(),
            function,
            constraint: constraint_to_json(inst.system.constraint()),
            meta: inst.meta.clone(),
        }
    }

    pub fn into_instance(self) -> Result<Instance> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::InvalidInstance(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        let record = match self.function {
            FunctionFile::Hypergraph { edges } => {
                FunctionRecord::Hypergraph(Arc::new(HypergraphFunction::new(self.n, edges)?))
            }
            FunctionFile::TightSupermodular { k, d, eps } => FunctionRecord::TightSupermodular { k, d, eps },
            FunctionFile::TightDependency { k, d, eps } => FunctionRecord::TightDependency { k, d, eps },
        };
        let constraint = constraint_from_json(self.n, self.constraint)?;
        Instance::from_record(record, self.n, constraint, self.meta)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json(inst: &Instance) -> String {
    let mut s =
        serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("instance serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.into_instance()
}

pub fn load(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInstance(format!("cannot read {}: {e}", path.display())))?;
    from_json(&text)
}

pub fn save(inst: &Instance, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(inst))
        .map_err(|e| Error::InvalidInstance(format!("cannot write {}: {e}", path.display())))
}

/// SHA-256 over the sorted-key JSON of everything but `meta`.
pub fn fingerprint(inst: &Instance) -> String {
    let file = InstanceFile::from_instance(inst);
    let canonical = serde_json::json!({
        "schema": file.schema,
        "n": file.n,
        "function": file.function,
        "constraint": file.constraint,
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}
