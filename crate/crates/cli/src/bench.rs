//! Benchmark matrices: generated instances × algorithms, one CSV row each.
//!
//! ```json
//! {
//!   "algorithms": ["ext-super", "ext-dep", "guess"],
//!   "opt": true,
//!   "instances": [
//!     {"generator": "random", "n": 8, "d": 1, "constraint": {"type": "uniform", "k": 3}, "seeds": [0, 1]},
//!     {"generator": "tight-supermodular", "k": 1, "d": 2, "eps": "1/10"}
//!   ]
//! }
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use setmax_core::audit::{approximation_ratio, solver_bounds, BruteOptions, OptCertificate};
use setmax_core::construct::{
    build_tight_dependency, build_tight_supermodular, graph_to_uniform_instance, random_bidders,
    random_graph, random_instance, random_matching, reduce_kdm, welfare_to_instance, Instance,
    RandomConstraint,
};
use setmax_core::report::{certify, solve};
use setmax_core::value::{self, Value};
use setmax_core::{format, Algorithm};

use crate::cli::BenchArgs;
use crate::gen::probability;
use crate::solve::parse_algorithms;
use crate::{emit, CliError, CliResult};

fn default_algorithms() -> Vec<String> {
    vec!["ext-super".into(), "ext-dep".into()]
}

fn yes() -> bool {
    true
}

fn one_seed() -> Vec<u64> {
    vec![0]
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<String>,
    #[serde(default = "yes")]
    pub opt: bool,
    #[serde(default)]
    pub brute_cap: Option<usize>,
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InstanceSpec {
    Random {
        n: usize,
        d: usize,
        constraint: RandomConstraint,
        #[serde(default = "one_seed")]
        seeds: Vec<u64>,
    },
    TightSupermodular {
        k: usize,
        d: usize,
        eps: String,
    },
    TightDependency {
        k: usize,
        d: usize,
        eps: String,
    },
    Kdm {
        sides: usize,
        side_size: usize,
        edges: usize,
        k: usize,
        d: usize,
        #[serde(default = "one_seed")]
        seeds: Vec<u64>,
    },
    Welfare {
        bidders: usize,
        items: usize,
        #[serde(default = "one_seed")]
        seeds: Vec<u64>,
    },
    GraphUniform {
        vertices: usize,
        p: String,
        delta: String,
        #[serde(default = "one_seed")]
        seeds: Vec<u64>,
    },
    File {
        path: PathBuf,
    },
}

impl InstanceSpec {
    fn name(&self) -> &'static str {
        match self {
            InstanceSpec::Random { .. } => "random",
            InstanceSpec::TightSupermodular { .. } => "tight-supermodular",
            InstanceSpec::TightDependency { .. } => "tight-dependency",
            InstanceSpec::Kdm { .. } => "kdm",
            InstanceSpec::Welfare { .. } => "welfare",
            InstanceSpec::GraphUniform { .. } => "graph-uniform",
            InstanceSpec::File { .. } => "file",
        }
    }

    fn seeds(&self) -> Vec<Option<u64>> {
        match self {
            InstanceSpec::Random { seeds, .. }
            | InstanceSpec::Kdm { seeds, .. }
            | InstanceSpec::Welfare { seeds, .. }
            | InstanceSpec::GraphUniform { seeds, .. } => seeds.iter().copied().map(Some).collect(),
            _ => vec![None],
        }
    }

    fn build(&self, seed: Option<u64>) -> CliResult<Instance> {
        let seed = seed.unwrap_or(0);
        Ok(match self {
            InstanceSpec::Random { n, d, constraint, .. } => random_instance(*n, *d, *constraint, seed)?,
            InstanceSpec::TightSupermodular { k, d, eps } => {
                build_tight_supermodular(*k, *d, value::parse_positive(eps)?)?.instance
            }
            InstanceSpec::TightDependency { k, d, eps } => {
                build_tight_dependency(*k, *d, value::parse_positive(eps)?)?.instance
            }
            InstanceSpec::Kdm {
                sides,
                side_size,
                edges,
                k,
                d,
                ..
            } => {
                let input = random_matching(*sides, *side_size, *edges, seed)?;
                reduce_kdm(&input.side_sizes, &input.edges, *k, *d)?
            }
            InstanceSpec::Welfare { bidders, items, .. } => {
                welfare_to_instance(&random_bidders(*bidders, *items, seed)?)?
            }
            InstanceSpec::GraphUniform {
                vertices, p, delta, ..
            } => {
                let (num, den) = probability(p)?;
                let edges = random_graph(*vertices, num, den, seed)?;
                graph_to_uniform_instance(*vertices, &edges, &value::parse(delta)?)?
            }
            InstanceSpec::File { path } => format::load(path)?,
        })
    }
}

pub const CSV_HEADER: [&str; 16] = [
    "instance",
    "seed",
    "fingerprint",
    "algorithm",
    "n",
    "k",
    "d",
    "value",
    "opt",
    "ratio",
    "bound",
    "bound_ok",
    "value_queries",
    "independence_queries",
    "ms",
    "error",
];

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub seed: String,
    pub fingerprint: String,
    pub algorithm: String,
    pub n: String,
    pub k: String,
    pub d: String,
    pub value: String,
    pub opt: String,
    pub ratio: String,
    pub bound: String,
    pub bound_ok: String,
    pub value_queries: String,
    pub independence_queries: String,
    pub ms: String,
    pub error: String,
}

impl BenchRow {
    pub fn violated(&self) -> bool {
        self.bound_ok == "false"
    }

    fn fields(&self) -> [&str; 16] {
        [
            &self.instance,
            &self.seed,
            &self.fingerprint,
            &self.algorithm,
            &self.n,
            &self.k,
            &self.d,
            &self.value,
            &self.opt,
            &self.ratio,
            &self.bound,
            &self.bound_ok,
            &self.value_queries,
            &self.independence_queries,
            &self.ms,
            &self.error,
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AlgorithmSummary {
    pub rows: usize,
    pub errors: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_ratio: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BenchSummary {
    pub rows: usize,
    pub errors: usize,
    pub violations: usize,
    pub algorithms: BTreeMap<String, AlgorithmSummary>,
}

pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub summary: BenchSummary,
}

fn constraint_k(inst: &Instance) -> String {
    inst.system
        .uniform_rank()
        .or_else(|| inst.system.extendibility())
        .map_or(String::new(), |k| k.to_string())
}

fn row_for(
    label: &str,
    seed: Option<u64>,
    inst: &Instance,
    alg: Algorithm,
    cert: Option<&OptCertificate>,
    brute: &BruteOptions,
) -> BenchRow {
    let mut row = BenchRow {
        instance: label.to_string(),
        seed: seed.map_or(String::new(), |s| s.to_string()),
        fingerprint: inst.fingerprint()[..16].to_string(),
        algorithm: alg.name().to_string(),
        n: inst.n().to_string(),
        k: constraint_k(inst),
        ..BenchRow::default()
    };
    if let Some(c) = cert {
        row.opt = value::format(&c.opt_value);
    }
    let start = Instant::now();
    let result = match solve(inst, alg, brute) {
        Ok(r) => r,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    row.ms = format!("{:.3}", start.elapsed().as_secs_f64() * 1e3);
    row.d = result.d_used.to_string();
    row.value = value::format(&result.value);
    row.value_queries = result.queries.value.to_string();
    row.independence_queries = result.queries.independence.to_string();
    if let Some(c) = cert {
        match approximation_ratio(&result, c) {
            Ok(r) => row.ratio = value::format(&r),
            Err(e) => row.error = e.to_string(),
        }
        let checks = solver_bounds(&result, &inst.oracle, &inst.system, c);
        if let Some(first) = checks.first() {
            row.bound = value::format(&first.bound);
        }
        if !checks.is_empty() {
            row.bound_ok = checks.iter().all(|b| b.holds).to_string();
        }
    }
    row
}

/// Runs the whole matrix. Rows come out in configuration order: instance
/// spec, then seed, then algorithm.
pub fn run_matrix(config: &BenchConfig) -> CliResult<BenchOutcome> {
    let algorithms = parse_algorithms(&config.algorithms)?;
    let brute = BruteOptions {
        cap: config.brute_cap,
        no_bound: false,
    };
    let mut rows = Vec::new();
    for (i, spec) in config.instances.iter().enumerate() {
        let label = format!("{i}:{}", spec.name());
        for seed in spec.seeds() {
            let inst = match spec.build(seed) {
                Ok(inst) => inst,
                Err(e) => {
                    rows.push(BenchRow {
                        instance: label.clone(),
                        seed: seed.map_or(String::new(), |s| s.to_string()),
                        error: e.to_string(),
                        ..BenchRow::default()
                    });
                    continue;
                }
            };
            let cert = if config.opt {
                match certify(&inst, &brute) {
                    Ok(c) => Some(c),
                    Err(e) => {
                        rows.push(BenchRow {
                            instance: label.clone(),
                            seed: seed.map_or(String::new(), |s| s.to_string()),
                            fingerprint: inst.fingerprint()[..16].to_string(),
                            n: inst.n().to_string(),
                            error: e.to_string(),
                            ..BenchRow::default()
                        });
                        continue;
                    }
                }
            } else {
                None
            };
            for &alg in &algorithms {
                rows.push(row_for(&label, seed, &inst, alg, cert.as_ref(), &brute));
            }
        }
    }
    let summary = summarize(&rows);
    Ok(BenchOutcome { rows, summary })
}

fn summarize(rows: &[BenchRow]) -> BenchSummary {
    let mut summary = BenchSummary::default();
    let mut minima: BTreeMap<String, Value> = BTreeMap::new();
    for row in rows {
        summary.rows += 1;
        let errored = !row.error.is_empty();
        summary.errors += errored as usize;
        summary.violations += row.violated() as usize;
        if row.algorithm.is_empty() {
            continue;
        }
        let entry = summary.algorithms.entry(row.algorithm.clone()).or_default();
        entry.rows += 1;
        entry.errors += errored as usize;
        entry.violations += row.violated() as usize;
        if let Ok(r) = value::parse(&row.ratio) {
            let slot = minima.entry(row.algorithm.clone()).or_insert_with(|| r.clone());
            if r < *slot {
                *slot = r;
            }
        }
    }
    for (alg, min) in minima {
        if let Some(entry) = summary.algorithms.get_mut(&alg) {
            entry.min_ratio = Some(value::format(&min));
        }
    }
    summary
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        w.write_record(row.fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

pub fn run(args: BenchArgs) -> CliResult<()> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| CliError::io(&args.config, e))?;
    let config: BenchConfig = serde_json::from_str(&text).map_err(|e| CliError::io(&args.config, e))?;
    let outcome = run_matrix(&config)?;
    let csv_text = to_csv(&outcome.rows);
    match &args.csv {
        Some(path) => emit(Some(path), &csv_text)?,
        None => emit(None, &csv_text)?,
    }
    if let Some(path) = &args.json {
        let mut json = serde_json::to_string_pretty(&outcome.summary).expect("summary serializes");
        json.push('\n');
        emit(Some(path), &json)?;
    }
    let s = &outcome.summary;
    eprintln!(
        "{} rows, {} errors, {} bound violations",
        s.rows, s.errors, s.violations
    );
    if s.violations > 0 {
        return Err(CliError::Falsified(format!("{} bound violations", s.violations)));
    }
    Ok(())
}
