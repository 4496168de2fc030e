use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(
    name = "ghs-explorer",
    version,
    about = "Smith normal forms of graphical Hermite simplices"
)]
pub struct Cli {
    /// Seed for every random sweep.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output format; JSON lines are the canonical machine format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file. For `conjecture` this is the counterexample log.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file with default values for any option.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smith normal form of a matrix file (JSON array of rows).
    Snf {
        file: PathBuf,
        /// Also print the unimodular transforms S and T with S A T = D.
        #[arg(long)]
        transforms: bool,
    },
    /// Build A_{d,G} and report its SNF, longest path and bound status.
    Ghs(InstanceArgs),
    /// Run theorem checks and stream one report per line.
    Verify(VerifyArgs),
    /// Search for counterexamples to the prime-rank conjecture.
    Conjecture(ConjectureArgs),
    /// Enumerate fundamental parallelepiped points and compare groups.
    Fpp {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Largest |det| to enumerate.
        #[arg(long)]
        cap: Option<u64>,
        /// List the points too.
        #[arg(long)]
        points: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Path,
    Complete,
    B,
    C,
    BipartiteMatching,
    BipartiteComplete,
}

/// Where an instance comes from: an instance file, a graph file with a
/// diagonal, or a named family with a diagonal.
#[derive(Args, Debug, Clone, Default)]
pub struct InstanceArgs {
    /// Instance JSON `{"d": [...], "graph": {...}}`.
    pub file: Option<PathBuf>,
    /// Graph JSON or edge-list text.
    #[arg(long, conflicts_with = "file")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with_all = ["file", "graph"])]
    pub family: Option<FamilyName>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub u: Option<usize>,
    #[arg(long)]
    pub v: Option<usize>,
    /// Constant diagonal value.
    #[arg(long, conflicts_with = "d")]
    pub m: Option<u64>,
    /// Diagonal entries, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub d: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    All,
    Cyclic,
    Bound,
    Exact,
    Bipartite,
    Families,
}

#[derive(Args, Debug, Clone, Default)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Option<SuiteName>,
    /// Number of random instances instead of exhaustive enumeration.
    #[arg(long)]
    pub random: Option<usize>,
    /// Check a single instance file instead of a sweep.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Diagonal for the family suite.
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub i_max: Option<usize>,
    #[arg(long)]
    pub c_max: Option<usize>,
    /// Largest n for exhaustive graph enumeration.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Constant diagonals for exhaustive runs.
    #[arg(long, value_delimiter = ',')]
    pub ms: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Range `lo:hi` for constant diagonals in random runs.
    #[arg(long)]
    pub m_range: Option<String>,
    /// Range `lo:hi` for random diagonal entries.
    #[arg(long)]
    pub diag_range: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ConjectureArgs {
    /// Sweep every labeled graph (the default).
    #[arg(long, conflicts_with = "random")]
    pub exhaustive: bool,
    /// Test this many random graphs on `[n]` instead.
    #[arg(long)]
    pub random: Option<usize>,
    /// Vertex count for random graphs.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest n for exhaustive sweeps.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Smallest n for exhaustive sweeps; defaults to n-max.
    #[arg(long)]
    pub n_min: Option<usize>,
    /// Primes to test, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Write every case, one per line, to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Re-check every entry of a counterexample log instead of sweeping.
    #[arg(long)]
    pub replay: Option<PathBuf>,
    /// Refuse exhaustive sweeps above this n.
    #[arg(long)]
    pub max_exhaustive_n: Option<usize>,
}
