//! Exhaustive dependency and supermodular sets, and monotonicity checks.
//!
//! Everything here tabulates `f` on all `2^n` subsets, so it is guarded by
//! an enumeration cap (16 by default, `SETMAX_BRUTE_CAP` overrides).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::set::{Element, ElementSet};
use crate::value::Value;

pub const DEFAULT_DEGREE_CAP: usize = 16;
pub const EXHAUSTIVE_MONOTONE_CAP: usize = 14;
/// Hard ceiling for bitmask tabulation regardless of overrides.
const MASK_LIMIT: usize = 30;

pub const CAP_ENV: &str = "SETMAX_BRUTE_CAP";

/// `default`, unless `SETMAX_BRUTE_CAP` holds a number.
pub fn cap_from_env(default: usize) -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// `f` tabulated on every subset, indexed by bitmask.
pub struct SubsetTable {
    n: usize,
    values: Vec<Value>,
}

impl SubsetTable {
    pub fn build(f: &dyn SetFunction, cap: usize, what: &'static str) -> Result<Self> {
        let n = f.ground_size();
        if n > cap || n > MASK_LIMIT {
            return Err(Error::SizeLimit {
                what,
                size: n,
                cap: cap.min(MASK_LIMIT),
            });
        }
        let values = (0..1u64 << n)
            .map(|mask| f.eval(&ElementSet::from_mask(mask, n)))
            .collect();
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, mask: u64) -> &Value {
        &self.values[mask as usize]
    }

    /// `f(u | S)` for `u ∉ S`.
    pub fn marginal(&self, u: Element, mask: u64) -> Value {
        self.value(mask | 1 << u) - self.value(mask)
    }

    /// Marginals of `u` on every mask not containing `u` (other entries zero).
    pub fn marginals_of(&self, u: Element) -> Vec<Value> {
        let bit = 1u64 << u;
        (0..1u64 << self.n)
            .map(|mask| {
                if mask & bit != 0 {
                    Value::default()
                } else {
                    self.marginal(u, mask)
                }
            })
            .collect()
    }

    /// Masks over the ground set avoiding both `u` and `v`.
    pub fn masks_avoiding(&self, u: Element, v: Element) -> impl Iterator<Item = u64> {
        let forbidden = (1u64 << u) | (1u64 << v);
        (0..1u64 << self.n).filter(move |m| m & forbidden == 0)
    }
}

/// Exact dependency and supermodular sets for every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDegrees {
    pub dep: Vec<ElementSet>,
    pub sdep: Vec<ElementSet>,
}

impl ExactDegrees {
    pub fn compute(f: &dyn SetFunction, cap: usize) -> Result<Self> {
        let table = SubsetTable::build(f, cap, "exhaustive degree computation")?;
        Ok(Self::from_table(&table))
    }

    pub fn from_table(table: &SubsetTable) -> Self {
        let n = table.n();
        let mut dep = vec![ElementSet::with_capacity(n); n];
        let mut sdep = vec![ElementSet::with_capacity(n); n];
        for u in 0..n {
            let marg = table.marginals_of(u);
            for v in (0..n).filter(|&v| v != u) {
                let vbit = 1u64 << v;
                for mask in table.masks_avoiding(u, v) {
                    let without = &marg[mask as usize];
                    let with = &marg[(mask | vbit) as usize];
                    if with != without {
                        dep[u].insert(v);
                        if with > without {
                            sdep[u].insert(v);
                            break;
                        }
                    }
                }
            }
        }
        Self { dep, sdep }
    }

    pub fn dependency_degree(&self) -> usize {
        self.dep.iter().map(ElementSet::len).max().unwrap_or(0)
    }

    pub fn supermodular_degree(&self) -> usize {
        self.sdep.iter().map(ElementSet::len).max().unwrap_or(0)
    }
}

fn single_element_sets(f: &dyn SetFunction, u: Element, cap: usize) -> Result<ExactDegrees> {
    let n = f.ground_size();
    if u >= n {
        return Err(Error::InvalidElement { id: u, n });
    }
    ExactDegrees::compute(f, cap)
}

/// `{v ≠ u : ∃ S ⊆ N - u - v, f(u | S + v) ≠ f(u | S)}`.
pub fn exact_dependency_set(f: &dyn SetFunction, u: Element, cap: usize) -> Result<ElementSet> {
    Ok(single_element_sets(f, u, cap)?.dep.swap_remove(u))
}

/// `{v ≠ u : ∃ S ⊆ N - u - v, f(u | S + v) > f(u | S)}`.
pub fn exact_supermodular_set(f: &dyn SetFunction, u: Element, cap: usize) -> Result<ElementSet> {
    Ok(single_element_sets(f, u, cap)?.sdep.swap_remove(u))
}

pub fn dependency_degree(f: &dyn SetFunction, cap: usize) -> Result<usize> {
    Ok(ExactDegrees::compute(f, cap)?.dependency_degree())
}

pub fn supermodular_degree(f: &dyn SetFunction, cap: usize) -> Result<usize> {
    Ok(ExactDegrees::compute(f, cap)?.supermodular_degree())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneCheck {
    pub monotone: bool,
    /// First pair `(S, u)` found with `f(S + u) < f(S)`.
    pub witness: Option<(ElementSet, Element)>,
    pub exhaustive: bool,
}

/// Scans every `(S, u)` pair when `n ≤ 14` (subsets in mask order, then
/// ascending `u`); larger ground sets get `trials` random insertion chains.
pub fn check_monotone(f: &dyn SetFunction, trials: usize, seed: u64) -> MonotoneCheck {
    let n = f.ground_size();
    if n <= EXHAUSTIVE_MONOTONE_CAP {
        let table = SubsetTable::build(f, EXHAUSTIVE_MONOTONE_CAP, "monotonicity scan").expect("within cap");
        for mask in 0..1u64 << n {
            for u in (0..n).filter(|&u| mask & (1 << u) == 0) {
                if table.value(mask | 1 << u) < table.value(mask) {
                    return MonotoneCheck {
                        monotone: false,
                        witness: Some((ElementSet::from_mask(mask, n), u)),
                        exhaustive: true,
                    };
                }
            }
        }
        return MonotoneCheck {
            monotone: true,
            witness: None,
            exhaustive: true,
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Element> = (0..n).collect();
    for _ in 0..trials {
        order.shuffle(&mut rng);
        let mut set = ElementSet::with_capacity(n);
        let mut current = f.eval(&set);
        for &u in &order {
            let next_set = set.with(u);
            let next = f.eval(&next_set);
            if next < current {
                return MonotoneCheck {
                    monotone: false,
                    witness: Some((set, u)),
                    exhaustive: false,
                };
            }
            set = next_set;
            current = next;
        }
    }
    MonotoneCheck {
        monotone: true,
        witness: None,
        exhaustive: false,
    }
}
