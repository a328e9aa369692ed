//! Ground truth and analysis checks: exhaustive optimum, approximation
//! bounds as exact inequalities, the per-iteration hybrid argument and
//! soundness of dependency oracles.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::degree::{cap_from_env, SubsetTable};
use crate::error::{Error, Result};
use crate::greedy::{Algorithm, GreedyTrace, GuessOutcome, SolveResult};
use crate::oracle::OracleBundle;
use crate::set::{for_each_subset_lex, Element, ElementSet};
use crate::system::IndependenceSystem;
use crate::value::{self, Value};

/// Brute force on uniform, partition and intersection constraints.
pub const DEFAULT_STRUCTURED_CAP: usize = 20;
/// Brute force on oracle-only constraints.
pub const DEFAULT_GENERAL_CAP: usize = 14;
/// Oracle soundness audit.
pub const DEFAULT_SOUNDNESS_CAP: usize = 12;
/// Largest candidate pool for one maximum-independent-subset search.
pub const HYBRID_POOL_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptCertificate {
    pub opt_set: ElementSet,
    #[serde(with = "value::as_string")]
    pub opt_value: Value,
    /// Search nodes visited.
    pub enumerated_count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct BruteOptions {
    /// Overrides both the default caps and `SETMAX_BRUTE_CAP`.
    pub cap: Option<usize>,
    /// Disable the `f(S ∪ candidates) ≤ best` cut (only valid for
    /// monotone functions, which every instance is).
    pub no_bound: bool,
}

struct Search<'a> {
    oracle: &'a OracleBundle,
    sys: &'a IndependenceSystem,
    bound: bool,
    best: ElementSet,
    best_value: Value,
    nodes: u64,
}

impl Search<'_> {
    fn visit(&mut self, set: &ElementSet, value: Value, candidates: &[Element]) {
        self.nodes += 1;
        if value > self.best_value {
            self.best = set.clone();
            self.best_value = value;
        }
        if candidates.is_empty() {
            return;
        }
        if self.bound {
            let reach: ElementSet = set.union(&candidates.iter().copied().collect());
            if self.oracle.function().eval(&reach) <= self.best_value {
                return;
            }
        }
        for (i, &u) in candidates.iter().enumerate() {
            let child = set.with(u);
            let rest: Vec<Element> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&v| self.sys.admits(&child.with(v)))
                .collect();
            let v = self.oracle.function().eval(&child);
            self.visit(&child, v, &rest);
        }
    }
}

/// Maximum of `f` over the independent sets, by depth-first search in
/// lexicographic order. Only strict improvements replace the incumbent, so
/// the lexicographically smallest optimal set is returned.
pub fn brute_force_opt(oracle: &OracleBundle, sys: &IndependenceSystem) -> Result<OptCertificate> {
    brute_force_opt_with(oracle, sys, &BruteOptions::default())
}

pub fn brute_force_opt_with(
    oracle: &OracleBundle,
    sys: &IndependenceSystem,
    opts: &BruteOptions,
) -> Result<OptCertificate> {
    let n = oracle.n();
    if sys.n() != n {
        return Err(Error::InvalidInstance(format!(
            "function has {n} elements, constraint has {}",
            sys.n()
        )));
    }
    let default = if sys.constraint().is_structured() {
        DEFAULT_STRUCTURED_CAP
    } else {
        DEFAULT_GENERAL_CAP
    };
    let cap = opts.cap.unwrap_or_else(|| cap_from_env(default));
    if n > cap {
        return Err(Error::SizeLimit {
            what: "brute-force optimum",
            size: n,
            cap,
        });
    }
    let empty = ElementSet::with_capacity(n);
    let root_value = oracle.function().eval(&empty);
    let mut search = Search {
        oracle,
        sys,
        bound: !opts.no_bound,
        best: empty.clone(),
        best_value: root_value.clone(),
        nodes: 0,
    };
    let candidates: Vec<Element> = (0..n).filter(|&u| sys.admits(&empty.with(u))).collect();
    search.visit(&empty, root_value, &candidates);
    Ok(OptCertificate {
        opt_set: search.best,
        opt_value: search.best_value,
        enumerated_count: search.nodes,
        fingerprint: None,
    })
}

/// `value / OPT`, or 1 when `OPT = 0`.
pub fn approximation_ratio(result: &SolveResult, cert: &OptCertificate) -> Result<Value> {
    if let (Some(a), Some(b)) = (&result.fingerprint, &cert.fingerprint) {
        if a != b {
            return Err(Error::InstanceMismatch(a.clone(), b.clone()));
        }
    }
    if cert.opt_value.is_zero() {
        return Ok(Value::one());
    }
    Ok(&result.value / &cert.opt_value)
}

/// One guarantee checked as `value ≥ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    #[serde(with = "value::as_string")]
    pub value: Value,
    #[serde(with = "value::as_string")]
    pub bound: Value,
    pub holds: bool,
}

impl BoundCheck {
    pub fn new(name: &str, value: Value, bound: Value) -> Self {
        Self {
            name: name.to_string(),
            holds: value >= bound,
            value,
            bound,
        }
    }
}

fn int(v: usize) -> Value {
    value::int(v as i64)
}

/// `OPT / (k(d + 1) + 1)`.
pub fn ext_super_bound(opt: &Value, k: usize, d: usize) -> Value {
    opt / int(k * (d + 1) + 1)
}

/// `OPT / (k(d + 1))`.
pub fn ext_dep_bound(opt: &Value, k: usize, d: usize) -> Value {
    opt / int((k * (d + 1)).max(1))
}

/// `OPT · (1 - (1 - 1/k)^ℓ)`, zero when `k = 0`.
pub fn greedy_fraction_bound(opt: &Value, k: usize, rounds: usize) -> Value {
    if k == 0 {
        return Value::zero();
    }
    let keep = Value::one() - Value::one() / int(k);
    opt * (Value::one() - value::pow(&keep, rounds))
}

/// The guess a solver that knew `OPT` would make: pad `OPT` to `k`
/// elements with the smallest unused ids, take `u*` in it sharing the most
/// supermodular dependencies with it (smallest id on ties), and guess
/// `D⁺(u*) ∩ OPT`.
pub fn reference_guess(oracle: &OracleBundle, opt_set: &ElementSet, k: usize) -> ElementSet {
    let mut padded = opt_set.clone();
    for u in 0..oracle.n() {
        if padded.len() >= k {
            break;
        }
        padded.insert(u);
    }
    let table = oracle.sdep_table();
    let anchor = padded
        .iter()
        .max_by_key(|&u| (table[u].intersection_len(&padded), std::cmp::Reverse(u)));
    match anchor {
        Some(u) => table[u].intersection(&padded),
        None => ElementSet::new(),
    }
}

fn guess_check(name: &str, result: &SolveResult, outcome: &GuessOutcome, opt: &Value) -> BoundCheck {
    BoundCheck::new(
        name,
        result.value.clone(),
        greedy_fraction_bound(opt, outcome.residual_k, outcome.iterations),
    )
}

/// Value of `S_ℓ` at the end of the main phase of a simple-greedy trace.
pub fn main_phase_value(trace: &GreedyTrace, rounds: usize) -> Value {
    trace
        .steps
        .iter()
        .take(rounds)
        .fold(trace.initial_value.clone(), |acc, s| acc + &s.gain)
}

/// Every guarantee that applies to `result`, checked against `cert`.
pub fn solver_bounds(
    result: &SolveResult,
    oracle: &OracleBundle,
    sys: &IndependenceSystem,
    cert: &OptCertificate,
) -> Vec<BoundCheck> {
    let opt = &cert.opt_value;
    let d = result.d_used;
    let mut checks = Vec::new();
    match result.algorithm {
        Algorithm::ExtSuper => {
            if let Some(k) = sys.extendibility() {
                checks.push(BoundCheck::new(
                    "opt/(k(d+1)+1)",
                    result.value.clone(),
                    ext_super_bound(opt, k, d),
                ));
            }
        }
        Algorithm::ExtDep => {
            if let Some(k) = sys.extendibility() {
                checks.push(BoundCheck::new(
                    "opt/(k(d+1))",
                    result.value.clone(),
                    ext_dep_bound(opt, k, d),
                ));
            }
        }
        Algorithm::Simple => {
            if let (Some(k), Some(rounds)) = (sys.uniform_rank(), result.main_phase) {
                checks.push(BoundCheck::new(
                    "main-phase opt(1-(1-1/k)^l)",
                    main_phase_value(&result.trace, rounds),
                    greedy_fraction_bound(opt, k, rounds),
                ));
            }
        }
        Algorithm::Guess => {
            if let (Some(k), Some(summary)) = (sys.uniform_rank(), &result.guess) {
                checks.push(guess_check(
                    "winning-guess opt(1-(1-1/k')^l)",
                    result,
                    &summary.winner,
                    opt,
                ));
                let reference = reference_guess(oracle, &cert.opt_set, k);
                if let Some(outcome) = summary.outcomes.iter().find(|o| o.guess == reference) {
                    checks.push(guess_check(
                        "reference-guess opt(1-(1-1/k')^l)",
                        result,
                        outcome,
                        opt,
                    ));
                }
            }
        }
        Algorithm::Brute => {
            checks.push(BoundCheck::new("opt", result.value.clone(), opt.clone()));
        }
    }
    checks
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HybridMode {
    /// Runs of the supermodular greedy: removal count and `k(d+1)` loss bound.
    Supermodular,
    /// Runs of the dependency greedy: removal count and `k(d+1) - 1` loss bound.
    Dependency,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HybridStep {
    pub iteration: usize,
    /// `|H_{i-1} \ H_i|`.
    pub removed: usize,
    /// `|S_i \ H_{i-1}|`.
    pub entering: usize,
    /// `f(H_{i-1}) - f(H_i)`.
    #[serde(with = "value::as_string")]
    pub loss: Value,
    #[serde(with = "value::as_string")]
    pub loss_bound: Value,
    pub removal_ok: bool,
    pub loss_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HybridAudit {
    pub mode: HybridMode,
    pub k: usize,
    pub d: usize,
    pub hybrids: Vec<ElementSet>,
    pub steps: Vec<HybridStep>,
    /// `H_ℓ = S_ℓ`.
    pub final_matches: bool,
    pub violations: Vec<String>,
}

impl HybridAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Extends `set` to a base, trying elements in ascending order.
fn extend_to_base(sys: &IndependenceSystem, set: &ElementSet) -> ElementSet {
    let mut out = set.clone();
    for u in 0..sys.n() {
        if !out.contains(u) && sys.admits(&out.with(u)) {
            out.insert(u);
        }
    }
    out
}

/// Largest independent `keep ∪ X` with `X ⊆ pool`; among those, the
/// lexicographically smallest `X`.
fn max_independent_containing(
    sys: &IndependenceSystem,
    keep: &ElementSet,
    pool: &ElementSet,
) -> Result<ElementSet> {
    let pool: Vec<Element> = pool.difference(keep).iter().collect();
    if pool.len() > HYBRID_POOL_CAP {
        return Err(Error::SizeLimit {
            what: "hybrid audit subset search",
            size: pool.len(),
            cap: HYBRID_POOL_CAP,
        });
    }
    let mut best = keep.clone();
    for_each_subset_lex(&pool, pool.len(), |x| {
        let candidate = keep.union(x);
        if !sys.admits(&candidate) {
            return false;
        }
        if candidate.len() > best.len() {
            best = candidate;
        }
        true
    });
    Ok(best)
}

/// Rebuilds the hybrid sequence `H_0, .., H_ℓ` of a traced run and checks
/// the per-iteration inequalities.
///
/// `H_0` is `OPT` extended to a base in ascending id order; `H_i` is the
/// largest independent subset of `H_{i-1} ∪ S_i` containing `S_i`. The
/// degree `d` is the largest oracle answer of the mode's kind.
pub fn hybrid_audit(
    oracle: &OracleBundle,
    sys: &IndependenceSystem,
    trace: &GreedyTrace,
    cert: &OptCertificate,
    mode: HybridMode,
) -> Result<HybridAudit> {
    let k = sys
        .extendibility()
        .ok_or_else(|| Error::Precondition("hybrid audit needs a system with known extendibility".into()))?;
    let d = match mode {
        HybridMode::Supermodular => oracle.max_sdep(),
        HybridMode::Dependency => oracle.max_dep(),
    };
    let f = oracle.function();
    let mut violations = Vec::new();
    let mut hybrids = vec![extend_to_base(sys, &cert.opt_set)];
    let mut steps = Vec::new();
    let kd = k * (d + 1);

    for (i, step) in trace.steps.iter().enumerate() {
        let prev = hybrids.last().expect("H_0 present");
        let s_i = &trace.sets[i + 1];
        let next = max_independent_containing(sys, s_i, &prev.union(s_i))?;
        let removed = prev.difference(&next).len();
        let entering = s_i.difference(prev).len();
        let removal_ok = removed <= k * entering && k * entering <= kd;
        let loss = f.eval(prev) - f.eval(&next);
        let factor = match mode {
            HybridMode::Supermodular => kd,
            HybridMode::Dependency => kd.saturating_sub(1),
        };
        let loss_bound = int(factor) * &step.score;
        let loss_ok = loss <= loss_bound;
        let iteration = i + 1;
        if !removal_ok {
            violations.push(format!(
                "iteration {iteration}: |H_(i-1) \\ H_i| = {removed}, k|S_i \\ H_(i-1)| = {}, k(d+1) = {kd}",
                k * entering
            ));
        }
        if !loss_ok {
            violations.push(format!(
                "iteration {iteration}: loss {} exceeds {factor} x {}",
                value::format(&loss),
                value::format(&step.score)
            ));
        }
        steps.push(HybridStep {
            iteration,
            removed,
            entering,
            loss,
            loss_bound,
            removal_ok,
            loss_ok,
        });
        hybrids.push(next);
    }

    let final_matches = hybrids.last() == trace.sets.last();
    if !final_matches {
        violations.push("final hybrid differs from the solution".into());
    }
    Ok(HybridAudit {
        mode,
        k,
        d,
        hybrids,
        steps,
        final_matches,
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SoundnessMode {
    /// Elements outside `sdep(u)` never raise a marginal of `u`.
    Supermodular,
    /// Elements outside `dep(u)` never change a marginal of `u`.
    Dependency,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessWitness {
    pub set: ElementSet,
    pub element: Element,
    pub other: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessAudit {
    pub mode: SoundnessMode,
    pub holds: bool,
    pub witness: Option<SoundnessWitness>,
}

/// Exhaustively checks an oracle table against its contract. The first
/// witness in (element, other, subset mask) order is reported.
pub fn dep_soundness_audit(
    oracle: &OracleBundle,
    mode: SoundnessMode,
    cap: Option<usize>,
) -> Result<SoundnessAudit> {
    let cap = cap.unwrap_or_else(|| cap_from_env(DEFAULT_SOUNDNESS_CAP));
    let table = SubsetTable::build(oracle.function().as_ref(), cap, "dependency soundness audit")?;
    let sets = match mode {
        SoundnessMode::Supermodular => oracle.sdep_table(),
        SoundnessMode::Dependency => oracle.dep_table(),
    };
    let n = oracle.n();
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u && !sets[u].contains(v)) {
            for mask in table.masks_avoiding(u, v) {
                let without = table.marginal(u, mask);
                let with = table.marginal(u, mask | 1 << v);
                let bad = match mode {
                    SoundnessMode::Supermodular => with > without,
                    SoundnessMode::Dependency => with != without,
                };
                if bad {
                    return Ok(SoundnessAudit {
                        mode,
                        holds: false,
                        witness: Some(SoundnessWitness {
                            set: ElementSet::from_mask(mask, n),
                            element: u,
                            other: v,
                        }),
                    });
                }
            }
        }
    }
    Ok(SoundnessAudit {
        mode,
        holds: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::HypergraphFunction;
    use crate::greedy::{extendible_greedy_dependency, extendible_greedy_supermodular};
    use crate::oracle::DependencySource;
    use crate::system::Constraint;
    use crate::value::{int, ratio};
    use std::sync::Arc;

    fn bundle(f: HypergraphFunction) -> OracleBundle {
        OracleBundle::hypergraph(Arc::new(f))
    }

    #[test]
    fn linear_top_k() {
        let o = bundle(HypergraphFunction::linear(&[int(4), int(9), int(1), int(9)]));
        let sys = IndependenceSystem::uniform(4, 2);
        let cert = brute_force_opt(&o, &sys).unwrap();
        assert_eq!(cert.opt_set.to_vec(), vec![1, 3]);
        assert_eq!(cert.opt_value, int(18));
        let plain = brute_force_opt_with(
            &o,
            &sys,
            &BruteOptions {
                cap: None,
                no_bound: true,
            },
        )
        .unwrap();
        assert_eq!(plain.opt_set, cert.opt_set);
        assert!(plain.enumerated_count >= cert.enumerated_count);
    }

    #[test]
    fn zero_function_gives_empty_set() {
        let o = bundle(HypergraphFunction::linear(&[int(0), int(0), int(0)]));
        let cert = brute_force_opt(&o, &IndependenceSystem::uniform(3, 3)).unwrap();
        assert!(cert.opt_set.is_empty());
        assert_eq!(cert.opt_value, int(0));
    }

    #[test]
    fn lexicographic_tie_break() {
        let o = bundle(HypergraphFunction::linear(&[int(1), int(1), int(1)]));
        let cert = brute_force_opt(&o, &IndependenceSystem::uniform(3, 2)).unwrap();
        assert_eq!(cert.opt_set.to_vec(), vec![0, 1]);
    }

    #[test]
    fn caps() {
        let o = bundle(HypergraphFunction::linear(&vec![int(1); 21]));
        let sys = IndependenceSystem::uniform(21, 2);
        assert!(matches!(brute_force_opt(&o, &sys), Err(Error::SizeLimit { .. })));
        let opts = BruteOptions {
            cap: Some(21),
            no_bound: false,
        };
        assert_eq!(brute_force_opt_with(&o, &sys, &opts).unwrap().opt_value, int(2));
        let custom = IndependenceSystem::new(
            15,
            Constraint::Custom(crate::system::CustomSystem {
                k: None,
                oracle: Arc::new(|s: &ElementSet| s.len() <= 1),
            }),
        )
        .unwrap();
        let o = bundle(HypergraphFunction::linear(&vec![int(1); 15]));
        assert!(brute_force_opt(&o, &custom).is_err());
    }

    #[test]
    fn ratio_conventions() {
        let o = bundle(HypergraphFunction::linear(&[int(0)]));
        let sys = IndependenceSystem::uniform(1, 1);
        let r = extendible_greedy_supermodular(&o, &sys).unwrap();
        let cert = brute_force_opt(&o, &sys).unwrap();
        assert_eq!(approximation_ratio(&r, &cert).unwrap(), int(1));
        let mut r2 = r.clone();
        r2.fingerprint = Some("a".into());
        let mut c2 = cert.clone();
        c2.fingerprint = Some("b".into());
        assert!(approximation_ratio(&r2, &c2).is_err());
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(ext_super_bound(&int(8), 1, 1), ratio(8, 3));
        assert_eq!(ext_dep_bound(&int(8), 2, 1), int(2));
        // 1 - (1/2)^2 = 3/4
        assert_eq!(greedy_fraction_bound(&int(4), 2, 2), int(3));
        assert_eq!(greedy_fraction_bound(&int(4), 0, 2), int(0));
        assert_eq!(greedy_fraction_bound(&int(4), 1, 1), int(4));
    }

    #[test]
    fn reference_guess_pads_and_picks_richest() {
        let f = HypergraphFunction::from_edges(
            4,
            [(vec![0, 1], int(1)), (vec![2, 3], int(1)), (vec![1, 2], int(1))],
        )
        .unwrap();
        let o = bundle(f);
        // OPT {1,2} padded to {0,1,2}; element 1 sees {0,2}
        let g = reference_guess(&o, &ElementSet::from([1, 2]), 3);
        assert_eq!(g.to_vec(), vec![0, 2]);
        assert!(reference_guess(&o, &ElementSet::new(), 0).is_empty());
    }

    #[test]
    fn hybrid_audit_on_small_runs() {
        let f = HypergraphFunction::from_edges(
            4,
            [
                (vec![0], int(1)),
                (vec![1, 2], int(3)),
                (vec![3], int(2)),
                (vec![0, 3], int(1)),
            ],
        )
        .unwrap();
        let o = bundle(f);
        let sys = IndependenceSystem::uniform(4, 2);
        let cert = brute_force_opt(&o, &sys).unwrap();
        let r = extendible_greedy_supermodular(&o, &sys).unwrap();
        let audit = hybrid_audit(&o, &sys, &r.trace, &cert, HybridMode::Supermodular).unwrap();
        assert!(audit.passed(), "{:?}", audit.violations);
        assert_eq!(audit.hybrids.len(), r.trace.sets.len());
        let r = extendible_greedy_dependency(&o, &sys).unwrap();
        let audit = hybrid_audit(&o, &sys, &r.trace, &cert, HybridMode::Dependency).unwrap();
        assert!(audit.passed(), "{:?}", audit.violations);
    }

    #[test]
    fn hybrid_audit_empty_run() {
        let o = bundle(HypergraphFunction::linear(&[]));
        let sys = IndependenceSystem::uniform(0, 0);
        let r = extendible_greedy_supermodular(&o, &sys).unwrap();
        let cert = brute_force_opt(&o, &sys).unwrap();
        let audit = hybrid_audit(&o, &sys, &r.trace, &cert, HybridMode::Supermodular).unwrap();
        assert!(audit.passed() && audit.steps.is_empty());
    }

    #[test]
    fn soundness_of_supersets_and_truncations() {
        let f = HypergraphFunction::from_edges(
            3,
            [
                (vec![0, 1], int(2)),
                (vec![2], int(1)),
                (vec![1, 2], int(-1)),
                (vec![1], int(1)),
            ],
        )
        .unwrap();
        let o = bundle(f);
        for mode in [SoundnessMode::Supermodular, SoundnessMode::Dependency] {
            assert!(dep_soundness_audit(&o, mode, None).unwrap().holds);
        }
        let empty = vec![ElementSet::new(); 3];
        let truncated = o
            .with_sets(empty.clone(), empty, DependencySource::Custom)
            .unwrap();
        let audit = dep_soundness_audit(&truncated, SoundnessMode::Supermodular, None).unwrap();
        assert!(!audit.holds);
        let w = audit.witness.unwrap();
        assert_eq!((w.element, w.other), (0, 1));
        assert!(w.set.is_empty());
    }
}
