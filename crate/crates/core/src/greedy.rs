//! Greedy solvers driven by dependency oracles.
//!
//! * [`extendible_greedy_supermodular`]: repeatedly adds the element and
//!   subset of its supermodular dependencies with the largest joint gain,
//!   until the solution is a base of the independence system.
//! * [`extendible_greedy_dependency`]: the same loop over full dependency
//!   sets, scoring a pair by the marginal of the element alone given the
//!   dependencies it brings along.
//! * [`simple_greedy_uniform`] and [`guess_greedy_uniform`]: cardinality
//!   constrained variants.
//!
//! Ties are broken by (largest score, smallest element, lexicographically
//! smallest dependency subset), which makes every run reproducible.

use std::cell::Cell;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::OracleBundle;
use crate::set::{for_each_subset_lex, subsets_by_size, Element, ElementSet};
use crate::system::IndependenceSystem;
use crate::value::{self, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Extendible-system greedy over supermodular dependencies.
    ExtSuper,
    /// Extendible-system greedy over dependency sets.
    ExtDep,
    /// Cardinality greedy with a completion step.
    Simple,
    /// Cardinality greedy over guessed dependency budgets.
    Guess,
    /// Exhaustive search.
    Brute,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ExtSuper => "ext-super",
            Algorithm::ExtDep => "ext-dep",
            Algorithm::Simple => "simple",
            Algorithm::Guess => "guess",
            Algorithm::Brute => "brute",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Algorithm::ExtSuper,
            Algorithm::ExtDep,
            Algorithm::Simple,
            Algorithm::Guess,
            Algorithm::Brute,
        ]
        .into_iter()
        .find(|a| a.name() == s)
    }

    pub fn needs_uniform(self) -> bool {
        matches!(self, Algorithm::Simple | Algorithm::Guess)
    }
}

/// How a candidate pair `(u, D)` is scored against the current set `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// `f(D + u | S)`.
    Joint,
    /// `f(u | D ∪ S)`.
    Conditional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub element: Element,
    /// Dependencies added together with `element` (never overlapping the
    /// previous solution).
    pub dependencies: ElementSet,
    /// The pair's score under the solver's objective.
    #[serde(with = "value::as_string")]
    pub score: Value,
    /// `f(S_i) - f(S_{i-1})`.
    #[serde(with = "value::as_string")]
    pub gain: Value,
    pub value_queries: u64,
    pub independence_queries: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyTrace {
    /// `S_0, S_1, ..., S_ℓ`.
    pub sets: Vec<ElementSet>,
    #[serde(with = "value::as_string")]
    pub initial_value: Value,
    pub steps: Vec<TraceStep>,
}

impl GreedyTrace {
    fn start(initial: ElementSet, initial_value: Value) -> Self {
        Self {
            sets: vec![initial],
            initial_value,
            steps: Vec::new(),
        }
    }

    pub fn last(&self) -> &ElementSet {
        self.sets.last().expect("trace always holds S_0")
    }

    pub fn iterations(&self) -> usize {
        self.steps.len()
    }

    /// `f(S_0) + Σ gains`.
    pub fn telescoped_value(&self) -> Value {
        self.steps
            .iter()
            .fold(self.initial_value.clone(), |acc, s| acc + &s.gain)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunQueries {
    pub value: u64,
    pub independence: u64,
    pub dependency: u64,
}

/// One guess of the guessing greedy and what it produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessOutcome {
    pub guess: ElementSet,
    /// `d' = |C|`.
    pub budget: usize,
    /// `r = k mod (d' + 1)`.
    pub seeded: usize,
    /// `ℓ = (k - r) / (d' + 1)`.
    pub iterations: usize,
    /// `k' = k - r`.
    pub residual_k: usize,
    #[serde(with = "value::as_string")]
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessSummary {
    pub winner: GuessOutcome,
    pub outcomes: Vec<GuessOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub algorithm: Algorithm,
    pub solution: ElementSet,
    #[serde(with = "value::as_string")]
    pub value: Value,
    pub trace: GreedyTrace,
    /// Degree bound the run assumed (largest oracle answer, or `d'` of the
    /// winning guess).
    pub d_used: usize,
    /// Number of loop iterations before the completion step (simple greedy).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub main_phase: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guess: Option<GuessSummary>,
    pub queries: RunQueries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<String>,
}

/// Per-run query accounting on top of the shared counters.
pub struct Probe<'a> {
    oracle: &'a OracleBundle,
    system: Option<&'a IndependenceSystem>,
    values: Cell<u64>,
    independence: Cell<u64>,
    dependency: Cell<u64>,
}

impl<'a> Probe<'a> {
    pub fn new(oracle: &'a OracleBundle, system: Option<&'a IndependenceSystem>) -> Self {
        Self {
            oracle,
            system,
            values: Cell::new(0),
            independence: Cell::new(0),
            dependency: Cell::new(0),
        }
    }

    pub fn value(&self, set: &ElementSet) -> Value {
        self.values.set(self.values.get() + 1);
        self.oracle.value(set)
    }

    /// Always true when the probe has no system attached.
    pub fn independent(&self, set: &ElementSet) -> bool {
        match self.system {
            Some(sys) => {
                self.independence.set(self.independence.get() + 1);
                sys.is_independent(set)
            }
            None => true,
        }
    }

    pub fn sdep(&self, u: Element) -> &'a ElementSet {
        self.dependency.set(self.dependency.get() + 1);
        self.oracle.sdep(u)
    }

    pub fn dep(&self, u: Element) -> &'a ElementSet {
        self.dependency.set(self.dependency.get() + 1);
        self.oracle.dep(u)
    }

    fn is_base(&self, set: &ElementSet) -> bool {
        (0..self.oracle.n())
            .filter(|&u| !set.contains(u))
            .all(|u| !self.independent(&set.with(u)))
    }

    pub fn queries(&self) -> RunQueries {
        RunQueries {
            value: self.values.get(),
            independence: self.independence.get(),
            dependency: self.dependency.get(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairChoice {
    pub element: Element,
    pub dependencies: ElementSet,
    pub score: Value,
    /// `f(S ∪ D + u)`.
    pub value_after: Value,
}

impl PairChoice {
    fn beats(&self, other: &PairChoice) -> bool {
        self.score > other.score
            || (self.score == other.score
                && (self.element < other.element
                    || (self.element == other.element && self.dependencies < other.dependencies)))
    }
}

/// Which elements a pair search may pick `D` from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DependencyKind {
    Supermodular,
    Full,
}

/// Exhaustive search for the best pair `(u, D)` with `u ∈ candidates \ S`,
/// `D ⊆ dep_of(u) \ S`, `|D| ≤ size_cap` and `S ∪ D + u` independent.
///
/// `current_value` must be `f(S)`. Subsets of a dependency set are visited in
/// lexicographic order and a subtree is skipped as soon as it becomes
/// infeasible. Returns `None` when no pair is feasible.
pub fn best_pair(
    probe: &Probe<'_>,
    current: &ElementSet,
    current_value: &Value,
    candidates: impl IntoIterator<Item = Element>,
    kind: DependencyKind,
    objective: Objective,
    size_cap: Option<usize>,
) -> Option<PairChoice> {
    let mut best: Option<PairChoice> = None;
    for u in candidates {
        if current.contains(u) {
            continue;
        }
        let base = current.with(u);
        if !probe.independent(&base) {
            continue;
        }
        let deps = match kind {
            DependencyKind::Supermodular => probe.sdep(u),
            DependencyKind::Full => probe.dep(u),
        };
        let pool: Vec<Element> = deps.iter().filter(|v| !current.contains(*v)).collect();
        let cap = size_cap.unwrap_or(pool.len()).min(pool.len());
        for_each_subset_lex(&pool, cap, |d| {
            let with_deps = current.union(d);
            let after = with_deps.with(u);
            if !d.is_empty() && !probe.independent(&after) {
                return false;
            }
            let value_after = probe.value(&after);
            let score = match objective {
                Objective::Joint => &value_after - current_value,
                Objective::Conditional => {
                    let before = if d.is_empty() {
                        current_value.clone()
                    } else {
                        probe.value(&with_deps)
                    };
                    &value_after - before
                }
            };
            let choice = PairChoice {
                element: u,
                dependencies: d.clone(),
                score,
                value_after,
            };
            if best.as_ref().is_none_or(|b| choice.beats(b)) {
                best = Some(choice);
            }
            true
        });
    }
    best
}

fn push_step(
    trace: &mut GreedyTrace,
    current: &mut ElementSet,
    current_value: &mut Value,
    choice: PairChoice,
    before: RunQueries,
    probe: &Probe<'_>,
) {
    let after = probe.queries();
    current.union_with(&choice.dependencies);
    current.insert(choice.element);
    let gain = &choice.value_after - &*current_value;
    *current_value = choice.value_after;
    trace.sets.push(current.clone());
    trace.steps.push(TraceStep {
        element: choice.element,
        dependencies: choice.dependencies,
        score: choice.score,
        gain,
        value_queries: after.value - before.value,
        independence_queries: after.independence - before.independence,
    });
}

fn check_system(oracle: &OracleBundle, sys: &IndependenceSystem) -> Result<()> {
    if oracle.n() != sys.n() {
        return Err(Error::InvalidInstance(format!(
            "function has {} elements, constraint has {}",
            oracle.n(),
            sys.n()
        )));
    }
    Ok(())
}

fn extendible_greedy(
    algorithm: Algorithm,
    oracle: &OracleBundle,
    sys: &IndependenceSystem,
    kind: DependencyKind,
    objective: Objective,
) -> Result<SolveResult> {
    check_system(oracle, sys)?;
    let n = oracle.n();
    let probe = Probe::new(oracle, Some(sys));
    let mut current = ElementSet::with_capacity(n);
    let mut current_value = probe.value(&current);
    let mut trace = GreedyTrace::start(current.clone(), current_value.clone());
    loop {
        let before = probe.queries();
        if probe.is_base(&current) {
            break;
        }
        let choice = best_pair(&probe, &current, &current_value, 0..n, kind, objective, None)
            .expect("a non-base always admits a single-element extension");
        push_step(
            &mut trace,
            &mut current,
            &mut current_value,
            choice,
            before,
            &probe,
        );
    }
    let d_used = match kind {
        DependencyKind::Supermodular => oracle.max_sdep(),
        DependencyKind::Full => oracle.max_dep(),
    };
    Ok(SolveResult {
        algorithm,
        solution: current,
        value: current_value,
        trace,
        d_used,
        main_phase: None,
        guess: None,
        queries: probe.queries(),
        fingerprint: None,
    })
}

/// Greedy over `(u, D ⊆ D⁺(u))` pairs maximizing `f(D + u | S)`, run until
/// the solution is a base. Guarantees `f(S) ≥ OPT / (k(d + 1) + 1)` on a
/// k-extendible system, `d` being the largest supermodular answer.
pub fn extendible_greedy_supermodular(
    oracle: &OracleBundle,
    sys: &IndependenceSystem,
) -> Result<SolveResult> {
    extendible_greedy(
        Algorithm::ExtSuper,
        oracle,
        sys,
        DependencyKind::Supermodular,
        Objective::Joint,
    )
}

/// Greedy over `(u, D ⊆ D(u))` pairs maximizing `f(u | D ∪ S)`, run until
/// the solution is a base. Guarantees `f(S) ≥ OPT / (k(d + 1))`.
pub fn extendible_greedy_dependency(oracle: &OracleBundle, sys: &IndependenceSystem) -> Result<SolveResult> {
    extendible_greedy(
        Algorithm::ExtDep,
        oracle,
        sys,
        DependencyKind::Full,
        Objective::Conditional,
    )
}

fn check_budget(oracle: &OracleBundle, k: usize) -> Result<()> {
    if k > oracle.n() {
        return Err(Error::InvalidParameter(format!(
            "cardinality budget {k} exceeds the ground set size {}",
            oracle.n()
        )));
    }
    Ok(())
}

/// `⌊k / (d + 1)⌋` rounds that each add an element together with its whole
/// supermodular set, then (if room is left) one capped pair step.
pub fn simple_greedy_uniform(oracle: &OracleBundle, k: usize) -> Result<SolveResult> {
    check_budget(oracle, k)?;
    let n = oracle.n();
    let d = oracle.max_sdep();
    let rounds = k / (d + 1);
    let probe = Probe::new(oracle, None);
    let mut current = ElementSet::with_capacity(n);
    let mut current_value = probe.value(&current);
    let mut trace = GreedyTrace::start(current.clone(), current_value.clone());

    for _ in 0..rounds {
        let before = probe.queries();
        let mut best: Option<PairChoice> = None;
        for u in (0..n).filter(|u| !current.contains(*u)) {
            let deps = probe.sdep(u).difference(&current);
            let after = current.union(&deps).with(u);
            let value_after = probe.value(&after);
            let choice = PairChoice {
                element: u,
                dependencies: deps,
                score: &value_after - &current_value,
                value_after,
            };
            if best.as_ref().is_none_or(|b| choice.beats(b)) {
                best = Some(choice);
            }
        }
        match best {
            Some(choice) => push_step(
                &mut trace,
                &mut current,
                &mut current_value,
                choice,
                before,
                &probe,
            ),
            None => break,
        }
    }
    let main_phase = trace.iterations();

    if current.len() < k {
        let room = k - current.len() - 1;
        let before = probe.queries();
        let choice = best_pair(
            &probe,
            &current,
            &current_value,
            0..n,
            DependencyKind::Supermodular,
            Objective::Joint,
            Some(room),
        );
        if let Some(choice) = choice {
            push_step(
                &mut trace,
                &mut current,
                &mut current_value,
                choice,
                before,
                &probe,
            );
        }
    }

    Ok(SolveResult {
        algorithm: Algorithm::Simple,
        solution: current,
        value: current_value,
        trace,
        d_used: d,
        main_phase: Some(main_phase),
        guess: None,
        queries: probe.queries(),
        fingerprint: None,
    })
}

/// Runs one guess `C`: seeds with the `r` smallest ids of `C`, then makes
/// `ℓ` pair steps with `|D| ≤ |C|`.
fn run_guess(
    probe: &Probe<'_>,
    k: usize,
    guess: &ElementSet,
) -> (GreedyTrace, ElementSet, Value, GuessOutcome) {
    let budget = guess.len();
    let seeded = k % (budget + 1);
    let iterations = (k - seeded) / (budget + 1);
    let mut current: ElementSet = guess.iter().take(seeded).collect();
    let mut current_value = probe.value(&current);
    let mut trace = GreedyTrace::start(current.clone(), current_value.clone());
    for _ in 0..iterations {
        let before = probe.queries();
        let choice = best_pair(
            probe,
            &current,
            &current_value,
            0..probe.oracle.n(),
            DependencyKind::Supermodular,
            Objective::Joint,
            Some(budget),
        );
        match choice {
            Some(choice) => push_step(
                &mut trace,
                &mut current,
                &mut current_value,
                choice,
                before,
                probe,
            ),
            None => break,
        }
    }
    let outcome = GuessOutcome {
        guess: guess.clone(),
        budget,
        seeded,
        iterations,
        residual_k: k - seeded,
        value: current_value.clone(),
    };
    (trace, current, current_value, outcome)
}

/// Tries every guess `C ⊆ D⁺(u*)` (ascending `u*`, then by size and
/// lexicographically; repeated sets are run once) and keeps the first
/// best-valued output.
pub fn guess_greedy_uniform(oracle: &OracleBundle, k: usize) -> Result<SolveResult> {
    check_budget(oracle, k)?;
    let n = oracle.n();
    let probe = Probe::new(oracle, None);
    if k == 0 || n == 0 {
        let empty = ElementSet::with_capacity(n);
        let v = probe.value(&empty);
        let outcome = GuessOutcome {
            guess: ElementSet::new(),
            budget: 0,
            seeded: 0,
            iterations: 0,
            residual_k: k,
            value: v.clone(),
        };
        return Ok(SolveResult {
            algorithm: Algorithm::Guess,
            solution: empty.clone(),
            value: v.clone(),
            trace: GreedyTrace::start(empty, v),
            d_used: 0,
            main_phase: None,
            guess: Some(GuessSummary {
                winner: outcome.clone(),
                outcomes: vec![outcome],
            }),
            queries: probe.queries(),
            fingerprint: None,
        });
    }

    let mut tried = HashSet::new();
    let mut outcomes = Vec::new();
    let mut best: Option<(GreedyTrace, ElementSet, Value, GuessOutcome)> = None;
    for anchor in 0..n {
        let pool = probe.sdep(anchor).to_vec();
        for guess in subsets_by_size(&pool) {
            if !tried.insert(guess.clone()) {
                continue;
            }
            let run = run_guess(&probe, k, &guess);
            outcomes.push(run.3.clone());
            if best.as_ref().is_none_or(|b| run.2 > b.2) {
                best = Some(run);
            }
        }
    }
    let (trace, solution, value, winner) = best.expect("the empty guess is always tried");
    Ok(SolveResult {
        algorithm: Algorithm::Guess,
        solution,
        value,
        trace,
        d_used: winner.budget,
        main_phase: None,
        guess: Some(GuessSummary { winner, outcomes }),
        queries: probe.queries(),
        fingerprint: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::HypergraphFunction;
    use crate::system::{Constraint, PartitionMatroid};
    use crate::value::{int, ratio};
    use std::sync::Arc;

    fn oracle(f: HypergraphFunction) -> OracleBundle {
        OracleBundle::hypergraph(Arc::new(f))
    }

    #[test]
    fn best_pair_on_a_base_is_none() {
        let o = oracle(HypergraphFunction::linear(&[int(1), int(2)]));
        let sys = IndependenceSystem::uniform(2, 1);
        let probe = Probe::new(&o, Some(&sys));
        let s = ElementSet::from([0]);
        let v = o.value(&s);
        assert!(best_pair(
            &probe,
            &s,
            &v,
            0..2,
            DependencyKind::Supermodular,
            Objective::Joint,
            None
        )
        .is_none());
    }

    #[test]
    fn best_pair_without_dependencies_is_plain_greedy() {
        let o = oracle(HypergraphFunction::linear(&[int(1), int(3), int(3), int(2)]));
        let sys = IndependenceSystem::uniform(4, 4);
        let probe = Probe::new(&o, Some(&sys));
        let choice = best_pair(
            &probe,
            &ElementSet::new(),
            &int(0),
            0..4,
            DependencyKind::Supermodular,
            Objective::Joint,
            None,
        )
        .unwrap();
        // tie between 1 and 2 goes to the smaller id
        assert_eq!(choice.element, 1);
        assert!(choice.dependencies.is_empty());
        assert_eq!(choice.score, int(3));
    }

    #[test]
    fn best_pair_prefers_synergy_and_respects_caps() {
        let f = HypergraphFunction::from_edges(
            3,
            [(vec![0], int(1)), (vec![2], ratio(3, 2)), (vec![0, 1], int(2))],
        )
        .unwrap();
        let o = oracle(f);
        let sys = IndependenceSystem::uniform(3, 3);
        let probe = Probe::new(&o, Some(&sys));
        let empty = ElementSet::new();
        let joint = best_pair(
            &probe,
            &empty,
            &int(0),
            0..3,
            DependencyKind::Supermodular,
            Objective::Joint,
            None,
        )
        .unwrap();
        assert_eq!((joint.element, joint.dependencies.to_vec()), (0, vec![1]));
        assert_eq!(joint.score, int(3));
        let capped = best_pair(
            &probe,
            &empty,
            &int(0),
            0..3,
            DependencyKind::Supermodular,
            Objective::Joint,
            Some(0),
        )
        .unwrap();
        assert_eq!(capped.element, 2);
        let tight = IndependenceSystem::uniform(3, 1);
        let probe = Probe::new(&o, Some(&tight));
        let single = best_pair(
            &probe,
            &empty,
            &int(0),
            0..3,
            DependencyKind::Supermodular,
            Objective::Joint,
            None,
        )
        .unwrap();
        assert_eq!(single.element, 2);
    }

    #[test]
    fn conditional_objective_scores_the_element_only() {
        // f(0 | {1}) = 3 beats f(1 | {0}) = 2
        let f = HypergraphFunction::from_edges(2, [(vec![0], int(1)), (vec![0, 1], int(2))]).unwrap();
        let o = oracle(f);
        let sys = IndependenceSystem::uniform(2, 2);
        let probe = Probe::new(&o, Some(&sys));
        let c = best_pair(
            &probe,
            &ElementSet::new(),
            &int(0),
            0..2,
            DependencyKind::Full,
            Objective::Conditional,
            None,
        )
        .unwrap();
        assert_eq!((c.element, c.dependencies.to_vec()), (0, vec![1]));
        assert_eq!(c.score, int(3));
        assert_eq!(c.value_after, int(3));
    }

    #[test]
    fn linear_function_picks_top_k() {
        let weights = [int(5), int(1), int(7), int(3), int(7)];
        let o = oracle(HypergraphFunction::linear(&weights));
        let sys = IndependenceSystem::uniform(5, 3);
        for result in [
            extendible_greedy_supermodular(&o, &sys).unwrap(),
            extendible_greedy_dependency(&o, &sys).unwrap(),
            simple_greedy_uniform(&o, 3).unwrap(),
            guess_greedy_uniform(&o, 3).unwrap(),
        ] {
            assert_eq!(result.solution.to_vec(), vec![0, 2, 4], "{:?}", result.algorithm);
            assert_eq!(result.value, int(19));
            assert_eq!(result.trace.telescoped_value(), result.value);
        }
    }

    #[test]
    fn extendible_output_is_a_base() {
        let f =
            HypergraphFunction::from_edges(4, [(vec![0], int(1)), (vec![1, 2], int(4)), (vec![3], int(2))])
                .unwrap();
        let o = oracle(f);
        let sys = IndependenceSystem::new(
            4,
            Constraint::Partition(PartitionMatroid::unit(4, vec![vec![0, 1], vec![2, 3]]).unwrap()),
        )
        .unwrap();
        let r = extendible_greedy_supermodular(&o, &sys).unwrap();
        assert_eq!(r.solution.to_vec(), vec![1, 2]);
        assert_eq!(r.value, int(4));
        assert!(sys.is_base(&r.solution).unwrap());
        assert_eq!(r.trace.sets[0], ElementSet::new());
        assert_eq!(r.d_used, 1);
    }

    #[test]
    fn empty_inputs() {
        let o = oracle(HypergraphFunction::linear(&[]));
        let sys = IndependenceSystem::uniform(0, 0);
        let r = extendible_greedy_supermodular(&o, &sys).unwrap();
        assert!(r.solution.is_empty() && r.trace.iterations() == 0);
        let o = oracle(HypergraphFunction::linear(&[int(1), int(2)]));
        let r = guess_greedy_uniform(&o, 0).unwrap();
        assert!(r.solution.is_empty());
        assert_eq!(r.value, int(0));
        assert!(simple_greedy_uniform(&o, 3).is_err());
    }

    #[test]
    fn simple_greedy_completion_when_budget_is_small() {
        // d = 2 (triangle of synergies), k = 2: no full rounds, one capped step
        let f = HypergraphFunction::from_edges(
            4,
            [(vec![0, 1, 2], int(6)), (vec![0, 1], int(1)), (vec![3], int(1))],
        )
        .unwrap();
        let o = oracle(f);
        let r = simple_greedy_uniform(&o, 2).unwrap();
        assert_eq!(r.main_phase, Some(0));
        assert_eq!(r.solution.to_vec(), vec![0, 1]);
        assert!(r.solution.len() <= 2);
    }

    #[test]
    fn guess_greedy_records_every_distinct_guess() {
        let f = HypergraphFunction::from_edges(
            4,
            [
                (vec![0, 1], int(2)),
                (vec![2], ratio(1, 2)),
                (vec![3], ratio(1, 2)),
            ],
        )
        .unwrap();
        let o = oracle(f);
        let r = guess_greedy_uniform(&o, 2).unwrap();
        let summary = r.guess.unwrap();
        let guesses: Vec<_> = summary.outcomes.iter().map(|g| g.guess.to_vec()).collect();
        assert_eq!(guesses, vec![vec![], vec![1], vec![0]]);
        assert_eq!(r.value, int(2));
        assert_eq!(summary.winner.guess.to_vec(), vec![1]);
        assert_eq!((summary.winner.seeded, summary.winner.iterations), (0, 1));
    }
}
