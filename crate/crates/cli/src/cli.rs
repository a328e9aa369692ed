use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "setmax",
    version,
    about = "Greedy maximization of monotone set functions under independence constraints"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an instance file
    Gen(GenArgs),
    /// Run solvers on an instance and report values, ratios and audits
    Solve(SolveArgs),
    /// Run a matrix of generated instances and algorithms
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub generator: Generator,

    /// Output file (standard output when omitted)
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// Worst case for the supermodular-degree greedy
    TightSupermodular(TightArgs),
    /// Worst case for the dependency-degree greedy
    TightDependency(TightArgs),
    /// Matroid intersection instance from an r-dimensional matching
    Kdm(KdmArgs),
    /// Combinatorial auction with one partition part per item
    Welfare(WelfareArgs),
    /// Induced-edge count under a cardinality budget
    GraphUniform(GraphArgs),
    /// Random hypergraph function with bounded degree
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct TightArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub d: usize,
    /// Positive rational, e.g. 1/10
    #[arg(long, default_value = "1/10")]
    pub eps: String,
}

#[derive(Debug, Args)]
pub struct KdmArgs {
    /// JSON file with {"side_sizes": [..], "edges": [[..], ..]}; random when omitted
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub sides: usize,
    #[arg(long, default_value_t = 3)]
    pub side_size: usize,
    #[arg(long, default_value_t = 4)]
    pub edges: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct WelfareArgs {
    /// JSON array of bidder utilities as hypergraph functions; random when omitted
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub bidders: usize,
    #[arg(long, default_value_t = 4)]
    pub items: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// JSON file with {"vertices": n, "edges": [[a, b], ..]}; random G(n, p) when omitted
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 6)]
    pub vertices: usize,
    /// Edge probability of the random graph
    #[arg(long, default_value = "1/2")]
    pub p: String,
    /// Budget fraction: at most floor(delta * |V|) vertices
    #[arg(long, default_value = "1/2")]
    pub delta: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstraintKind {
    Uniform,
    Partition,
    Intersection,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    /// Bound on every element's dependency set
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, value_enum, default_value_t = ConstraintKind::Uniform)]
    pub constraint: ConstraintKind,
    /// Cardinality budget of a uniform constraint (default n / 2)
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of parts of each random partition
    #[arg(long, default_value_t = 3)]
    pub parts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance file
    pub instance: PathBuf,

    /// Algorithms to run (repeat or separate with commas)
    #[arg(long = "alg", value_delimiter = ',', default_value = "ext-super")]
    pub algorithms: Vec<String>,

    /// Compute the optimum by brute force and check bounds
    #[arg(long, overrides_with = "no_opt")]
    pub opt: bool,

    /// Skip the optimum (the default; overrides an earlier --opt)
    #[arg(long = "no-opt", overrides_with = "opt")]
    pub no_opt: bool,

    /// Also run the hybrid and oracle-soundness audits (implies --opt)
    #[arg(long)]
    pub audit: bool,

    /// Report file; the JSON goes to standard output when omitted and the
    /// summary table to standard error
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// Largest ground set the brute-force search accepts
    #[arg(long)]
    pub brute_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Matrix configuration (JSON)
    pub config: PathBuf,

    /// CSV table, one row per (instance, algorithm)
    #[arg(long)]
    pub csv: Option<PathBuf>,

    /// JSON aggregate
    #[arg(long)]
    pub json: Option<PathBuf>,
}
