//! Greedy maximization of monotone set functions with bounded dependency or
//! supermodular degree, over independence systems.
//!
//! Values are exact rationals throughout. The main entry points:
//!
//! * [`oracle::OracleBundle`] wraps a [`function::SetFunction`] with
//!   dependency oracles and query counters.
//! * [`system::IndependenceSystem`] holds uniform, partition and
//!   intersection constraints.
//! * [`greedy`] has the solvers, [`construct`] the instance generators and
//!   [`audit`] the brute-force checks.

pub mod audit;
pub mod construct;
pub mod degree;
pub mod error;
pub mod format;
pub mod function;
pub mod greedy;
pub mod oracle;
pub mod report;
pub mod set;
pub mod system;
pub mod value;

pub use error::{Error, Result};
pub use function::{Hyperedge, HypergraphFunction, SetFunction};
pub use greedy::{
    extendible_greedy_dependency, extendible_greedy_supermodular, guess_greedy_uniform,
    simple_greedy_uniform, Algorithm, SolveResult,
};
pub use oracle::{DependencySource, OracleBundle};
pub use set::{Element, ElementSet, GroundSet};
pub use system::{Constraint, IndependenceSystem, PartitionMatroid};
pub use value::Value;
