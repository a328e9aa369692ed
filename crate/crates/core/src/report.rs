//! Running solvers on an instance and collecting a machine-readable report.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::audit::{
    approximation_ratio, brute_force_opt_with, dep_soundness_audit, hybrid_audit, solver_bounds, BoundCheck,
    BruteOptions, HybridAudit, HybridMode, OptCertificate, SoundnessAudit, SoundnessMode,
    DEFAULT_SOUNDNESS_CAP,
};
use crate::construct::Instance;
use crate::degree::cap_from_env;
use crate::error::{Error, Result};
use crate::greedy::{
    extendible_greedy_dependency, extendible_greedy_supermodular, guess_greedy_uniform,
    simple_greedy_uniform, Algorithm, GreedyTrace, GuessOutcome, RunQueries, SolveResult,
};
use crate::set::ElementSet;
use crate::value::{self, Value};

/// Runs one algorithm and stamps the result with the instance fingerprint.
pub fn solve(inst: &Instance, alg: Algorithm, brute: &BruteOptions) -> Result<SolveResult> {
    let uniform = || {
        inst.system.uniform_rank().ok_or_else(|| {
            Error::Precondition(format!("{} needs a uniform (cardinality) constraint", alg.name()))
        })
    };
    let mut result = match alg {
        Algorithm::ExtSuper => extendible_greedy_supermodular(&inst.oracle, &inst.system)?,
        Algorithm::ExtDep => extendible_greedy_dependency(&inst.oracle, &inst.system)?,
        Algorithm::Simple => simple_greedy_uniform(&inst.oracle, uniform()?)?,
        Algorithm::Guess => guess_greedy_uniform(&inst.oracle, uniform()?)?,
        Algorithm::Brute => {
            let cert = brute_force_opt_with(&inst.oracle, &inst.system, brute)?;
            let empty = ElementSet::with_capacity(inst.n());
            let base = inst.oracle.function().eval(&empty);
            let mut trace = GreedyTrace {
                sets: vec![empty],
                initial_value: base,
                steps: Vec::new(),
            };
            trace.sets.push(cert.opt_set.clone());
            SolveResult {
                algorithm: Algorithm::Brute,
                solution: cert.opt_set,
                value: cert.opt_value,
                trace,
                d_used: 0,
                main_phase: None,
                guess: None,
                queries: RunQueries::default(),
                fingerprint: None,
            }
        }
    };
    result.fingerprint = Some(inst.fingerprint());
    Ok(result)
}

/// Optimum with the instance fingerprint attached.
pub fn certify(inst: &Instance, brute: &BruteOptions) -> Result<OptCertificate> {
    let mut cert = brute_force_opt_with(&inst.oracle, &inst.system, brute)?;
    cert.fingerprint = Some(inst.fingerprint());
    Ok(cert)
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Compute the optimum and check bounds.
    pub opt: bool,
    /// Hybrid and oracle-soundness audits (implies `opt`).
    pub audit: bool,
    pub brute: BruteOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmReport {
    pub algorithm: Algorithm,
    pub solution: ElementSet,
    #[serde(with = "value::as_string")]
    pub value: Value,
    #[serde(default, with = "value::opt_string", skip_serializing_if = "Option::is_none")]
    pub ratio: Option<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundCheck>,
    pub d_used: usize,
    pub iterations: usize,
    pub queries: RunQueries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub winning_guess: Option<GuessOutcome>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Audits {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hybrid: Vec<HybridAudit>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub soundness: Vec<SoundnessAudit>,
    /// Audits that could not run, with the reason.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub fingerprint: String,
    pub n: usize,
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt: Option<OptCertificate>,
    pub runs: Vec<AlgorithmReport>,
    pub audits: Audits,
    /// False when any bound or audit failed.
    pub passed: bool,
}

fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Runs the given algorithms, then the optional optimum and audits.
pub fn run(inst: &Instance, algorithms: &[Algorithm], opts: &RunOptions) -> Result<RunReport> {
    let want_opt = opts.opt || opts.audit;
    let cert = if want_opt {
        Some(certify(inst, &opts.brute)?)
    } else {
        None
    };
    let mut runs = Vec::new();
    let mut audits = Audits::default();
    for &alg in algorithms {
        let start = Instant::now();
        let result = solve(inst, alg, &opts.brute)?;
        let wall_ms = elapsed_ms(start);
        let (ratio, bounds) = match &cert {
            Some(c) => (
                Some(approximation_ratio(&result, c)?),
                solver_bounds(&result, &inst.oracle, &inst.system, c),
            ),
            None => (None, Vec::new()),
        };
        if opts.audit {
            let mode = match alg {
                Algorithm::ExtSuper => Some(HybridMode::Supermodular),
                Algorithm::ExtDep => Some(HybridMode::Dependency),
                _ => None,
            };
            if let (Some(mode), Some(c)) = (mode, &cert) {
                match hybrid_audit(&inst.oracle, &inst.system, &result.trace, c, mode) {
                    Ok(a) => audits.hybrid.push(a),
                    Err(e) => audits
                        .skipped
                        .push(format!("hybrid audit of {}: {e}", alg.name())),
                }
            }
        }
        runs.push(AlgorithmReport {
            algorithm: alg,
            iterations: result.trace.iterations(),
            winning_guess: result.guess.as_ref().map(|g| g.winner.clone()),
            solution: result.solution,
            value: result.value,
            ratio,
            bounds,
            d_used: result.d_used,
            queries: result.queries,
            wall_ms,
        });
    }
    if opts.audit {
        let cap = cap_from_env(DEFAULT_SOUNDNESS_CAP);
        for mode in [SoundnessMode::Supermodular, SoundnessMode::Dependency] {
            match dep_soundness_audit(&inst.oracle, mode, Some(cap)) {
                Ok(a) => audits.soundness.push(a),
                Err(e) => audits.skipped.push(format!("soundness audit: {e}")),
            }
        }
    }
    let passed = runs.iter().all(|r| r.bounds.iter().all(|b| b.holds))
        && audits.hybrid.iter().all(HybridAudit::passed)
        && audits.soundness.iter().all(|a| a.holds);
    Ok(RunReport {
        fingerprint: inst.fingerprint(),
        n: inst.n(),
        construction: inst.meta.construction.clone(),
        opt: cert,
        runs,
        audits,
        passed,
    })
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text table, one row per algorithm.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "instance {} (n = {}, {})\n",
            &self.fingerprint[..12],
            self.n,
            self.construction
        );
        if let Some(c) = &self.opt {
            out += &format!("opt {} at {:?}\n", value::format(&c.opt_value), c.opt_set);
        }
        out += &format!(
            "{:<10} {:>12} {:>12} {:>7} {:>9} {:>9} {:>10}\n",
            "algorithm", "value", "ratio", "bounds", "f-queries", "i-queries", "ms"
        );
        for r in &self.runs {
            let ratio = r.ratio.as_ref().map_or("-".to_string(), value::format);
            let bounds = if r.bounds.is_empty() {
                "-"
            } else if r.bounds.iter().all(|b| b.holds) {
                "ok"
            } else {
                "FAIL"
            };
            out += &format!(
                "{:<10} {:>12} {:>12} {:>7} {:>9} {:>9} {:>10.3}\n",
                r.algorithm.name(),
                value::format(&r.value),
                ratio,
                bounds,
                r.queries.value,
                r.queries.independence,
                r.wall_ms
            );
        }
        for a in &self.audits.hybrid {
            out += &format!(
                "hybrid audit ({:?}): {}\n",
                a.mode,
                if a.passed() { "ok" } else { "FAIL" }
            );
        }
        for a in &self.audits.soundness {
            out += &format!(
                "oracle soundness ({:?}): {}\n",
                a.mode,
                if a.holds { "ok" } else { "FAIL" }
            );
        }
        for s in &self.audits.skipped {
            out += &format!("skipped: {s}\n");
        }
        out
    }
}

/// The report as JSON with every `wall_ms` field zeroed, for comparing runs.
pub fn without_timings(report: &RunReport) -> RunReport {
    let mut r = report.clone();
    for run in &mut r.runs {
        run.wall_ms = 0.0;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_tight_supermodular, random_instance, RandomConstraint};
    use crate::value::ratio;

    #[test]
    fn tight_report_has_exact_ratio() {
        let t = build_tight_supermodular(1, 2, ratio(1, 10)).unwrap();
        let opts = RunOptions {
            opt: true,
            audit: true,
            ..RunOptions::default()
        };
        let report = run(&t.instance, &[Algorithm::ExtSuper], &opts).unwrap();
        assert_eq!(report.runs[0].ratio, Some(ratio(11, 40)));
        assert!(report.passed, "{}", report.summary());
        assert_eq!(report.audits.hybrid.len(), 1);
        let json = report.to_json();
        assert!(json.contains(r#""ratio": "11/40""#));
    }

    #[test]
    fn uniform_only_algorithms() {
        let inst = random_instance(6, 1, RandomConstraint::Partition { parts: 3 }, 3).unwrap();
        let err = solve(&inst, Algorithm::Simple, &BruteOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn deterministic_modulo_timing() {
        let inst = random_instance(8, 2, RandomConstraint::Uniform { k: 3 }, 9).unwrap();
        let algs = [
            Algorithm::ExtSuper,
            Algorithm::ExtDep,
            Algorithm::Simple,
            Algorithm::Guess,
            Algorithm::Brute,
        ];
        let opts = RunOptions {
            opt: true,
            audit: true,
            ..RunOptions::default()
        };
        let a = without_timings(&run(&inst, &algs, &opts).unwrap());
        let b = without_timings(&run(&inst, &algs, &opts).unwrap());
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed, "{}", a.summary());
    }
}
