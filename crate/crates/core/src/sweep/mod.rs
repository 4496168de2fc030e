//! Batch drivers: theorem suites over enumerated or random instances, the
//! conjecture search, and the counterexample log.
//!
//! Cases are built up front in a fixed order, evaluated in parallel, and
//! returned in that same order, so output depends only on the configuration.

mod generate;
mod log;

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dag::{Bipartition, Dag, Family};
use crate::error::{Error, Result};
use crate::ghs::GhsInstance;
use crate::linalg::is_prime;
use crate::verify::{
    check_b_family_largest, check_bipartite_formula, check_c_family, check_conjecture, check_cyclic_cokernel,
    check_disjoint_union_prime, check_exact_largest, check_largest_bound, check_pairwise_coprime,
    check_prime_bipartite, ConjectureCase, Verdict, VerificationReport,
};

pub use generate::{
    bipartite_dags, case_rng, graph_from_mask, labeled_graph_count, labeled_graphs, random_coprime_diagonal,
    random_diagonal, random_graph, random_permutation, vertex_pairs, EDGE_PROBABILITIES,
};
pub use log::CounterexampleLog;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Cyclic,
    Bound,
    Exact,
    Bipartite,
    Families,
}

/// Parameters for [`run_suite`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random instance count; `None` selects the exhaustive variant where
    /// one exists.
    pub random: Option<usize>,
    /// Largest vertex count for exhaustive graph enumeration.
    pub n_max: usize,
    /// Largest vertex count for random graphs.
    pub random_n_max: usize,
    /// Constant diagonals for exhaustive runs.
    pub ms: Vec<u64>,
    /// Constant diagonal range for random runs.
    pub m_range: (u64, u64),
    /// Range for random diagonal entries.
    pub diag_range: (u64, u64),
    pub primes: Vec<u64>,
    pub max_part: usize,
    pub family_m: u64,
    pub i_max: usize,
    pub c_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            random: None,
            n_max: 5,
            random_n_max: 7,
            ms: (2..=8).collect(),
            m_range: (2, 12),
            diag_range: (1, 12),
            primes: vec![2, 3, 5, 7],
            max_part: 3,
            family_m: 6,
            i_max: 5,
            c_max: 3,
        }
    }
}

/// Default number of random instances for the cyclic suite.
pub const DEFAULT_CYCLIC_COUNT: usize = 500;

/// A unit of work, evaluated independently.
#[derive(Clone, Debug)]
enum Task {
    Cyclic(GhsInstance),
    Coprime(GhsInstance),
    Bound(GhsInstance),
    Exact(GhsInstance),
    Bipartite(GhsInstance, Bipartition),
    PrimeBipartite(GhsInstance, Bipartition),
    BFamily(usize, u64),
    CFamily(usize, u64),
    DisjointUnion(u64, Dag, Dag),
}

impl Task {
    fn run(&self) -> Result<VerificationReport> {
        match self {
            Task::Cyclic(i) => check_cyclic_cokernel(i),
            Task::Coprime(i) => check_pairwise_coprime(i),
            Task::Bound(i) => check_largest_bound(i),
            Task::Exact(i) => check_exact_largest(i),
            Task::Bipartite(i, b) => check_bipartite_formula(i, b),
            Task::PrimeBipartite(i, b) => check_prime_bipartite(i, b),
            Task::BFamily(i, m) => check_b_family_largest(*i, *m),
            Task::CFamily(i, m) => check_c_family(*i, *m),
            Task::DisjointUnion(p, a, b) => check_disjoint_union_prime(*p, a, b),
        }
    }
}

fn run_tasks(tasks: Vec<Task>) -> Result<Vec<VerificationReport>> {
    tasks.par_iter().map(Task::run).collect()
}

// distinct seed lanes per suite so that suites sharing a seed draw
// independent instances
const LANE_CYCLIC: u64 = 0x6379_636c_6963;
const LANE_CONSTANT: u64 = 0x62_6f75_6e64;

fn lane_rng(seed: u64, lane: u64, index: usize) -> rand_chacha::ChaCha8Rng {
    case_rng(seed ^ lane, index as u64)
}

fn random_n<R: Rng>(rng: &mut R, n_max: usize) -> usize {
    rng.random_range(1..=n_max.max(1))
}

/// A random graph that contains the path `1 -> 2 -> ... -> n`.
fn with_full_spine<R: Rng>(rng: &mut R, n: usize) -> Dag {
    let g = random_graph(rng, n);
    let edges = g.edges().chain((1..n).map(|k| (k, k + 1)));
    Dag::topological_orientation(n, edges).expect("valid pairs")
}

fn cyclic_tasks(cfg: &SuiteConfig) -> Result<Vec<Task>> {
    let count = cfg.random.unwrap_or(DEFAULT_CYCLIC_COUNT);
    let (lo, hi) = cfg.diag_range;
    let mut tasks = Vec::with_capacity(4 * count);
    for k in 0..count {
        let mut rng = lane_rng(cfg.seed, LANE_CYCLIC, k);
        let n = random_n(&mut rng, cfg.random_n_max);
        let g = random_graph(&mut rng, n);
        let coprime = GhsInstance::build(random_coprime_diagonal(&mut rng, n, lo, hi), g)?;
        tasks.push(Task::Cyclic(coprime.clone()));
        tasks.push(Task::Coprime(coprime));

        let path = Family::Path(n).build()?.relabel(&random_permutation(&mut rng, n))?;
        tasks.push(Task::Cyclic(GhsInstance::build(
            random_diagonal(&mut rng, n, lo, hi),
            path,
        )?));

        let m = rng.random_range(cfg.m_range.0..=cfg.m_range.1);
        tasks.push(Task::Cyclic(GhsInstance::constant(m, with_full_spine(&mut rng, n))?));
    }
    Ok(tasks)
}

fn constant_instances(cfg: &SuiteConfig) -> Result<Vec<GhsInstance>> {
    match cfg.random {
        Some(count) => (0..count)
            .map(|k| {
                let mut rng = lane_rng(cfg.seed, LANE_CONSTANT, k);
                let n = random_n(&mut rng, cfg.random_n_max);
                let m = rng.random_range(cfg.m_range.0..=cfg.m_range.1);
                GhsInstance::constant(m, random_graph(&mut rng, n))
            })
            .collect(),
        None => {
            let mut out = Vec::new();
            for n in 1..=cfg.n_max {
                for g in labeled_graphs(n) {
                    for &m in &cfg.ms {
                        out.push(GhsInstance::constant(m, g.clone())?);
                    }
                }
            }
            Ok(out)
        }
    }
}

fn bipartite_tasks(cfg: &SuiteConfig) -> Result<Vec<Task>> {
    let mut tasks = Vec::new();
    for u in 1..=cfg.max_part {
        for v in 1..=cfg.max_part {
            for (g, bip) in bipartite_dags(u, v) {
                for &m in &cfg.ms {
                    tasks.push(Task::Bipartite(GhsInstance::constant(m, g.clone())?, bip.clone()));
                }
                for &p in &cfg.primes {
                    tasks.push(Task::PrimeBipartite(GhsInstance::constant(p, g.clone())?, bip.clone()));
                }
            }
        }
    }
    Ok(tasks)
}

fn family_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let b = (1..=cfg.i_max).map(|i| Task::BFamily(i, cfg.family_m));
    let c = (1..=cfg.c_max).map(|i| Task::CFamily(i, cfg.family_m));
    b.chain(c).collect()
}

fn disjoint_union_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let small: Vec<Dag> = (1..=3).flat_map(labeled_graphs).collect();
    let mut tasks = Vec::new();
    for &p in &cfg.primes {
        for a in &small {
            for b in &small {
                tasks.push(Task::DisjointUnion(p, a.clone(), b.clone()));
            }
        }
    }
    tasks
}

fn check_primes(primes: &[u64]) -> Result<()> {
    match primes.iter().find(|&&p| !is_prime(p)) {
        Some(&p) => Err(Error::NotPrime(p)),
        None => Ok(()),
    }
}

/// Runs a theorem suite and returns its reports in case order.
///
/// `all` runs every suite and adds the disjoint-union experiment.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    check_primes(&cfg.primes)?;
    let tasks = match suite {
        Suite::Cyclic => cyclic_tasks(cfg)?,
        Suite::Bound => constant_instances(cfg)?.into_iter().map(Task::Bound).collect(),
        Suite::Exact => constant_instances(cfg)?.into_iter().map(Task::Exact).collect(),
        Suite::Bipartite => bipartite_tasks(cfg)?,
        Suite::Families => family_tasks(cfg),
        Suite::All => {
            let mut t = cyclic_tasks(cfg)?;
            let constant = constant_instances(cfg)?;
            t.extend(constant.iter().cloned().map(Task::Bound));
            t.extend(constant.into_iter().map(Task::Exact));
            t.extend(bipartite_tasks(cfg)?);
            t.extend(family_tasks(cfg));
            t.extend(disjoint_union_tasks(cfg));
            t
        }
    };
    run_tasks(tasks)
}

/// Verdict counts per claim.
pub fn tally(reports: &[VerificationReport]) -> BTreeMap<String, BTreeMap<Verdict, usize>> {
    let mut out: BTreeMap<String, BTreeMap<Verdict, usize>> = BTreeMap::new();
    for r in reports {
        let claim = serde_json::to_value(r.claim).expect("claims serialize");
        let key = claim.as_str().expect("claims are strings").to_owned();
        *out.entry(key).or_default().entry(r.verdict).or_default() += 1;
    }
    out
}

/// How the conjecture search picks graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum SweepMode {
    /// Every labeled graph on `[n]` for `n_min <= n <= n_max`.
    Exhaustive { n_min: usize, n_max: usize },
    /// `count` random graphs on `[n]`, each tested against every prime.
    Random { count: usize, n: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureSweep {
    pub primes: Vec<u64>,
    #[serde(flatten)]
    pub mode: SweepMode,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub holds: usize,
    pub violated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureSummary {
    pub sweep: ConjectureSweep,
    pub cases: usize,
    pub holds: usize,
    pub violated: usize,
    pub by_prime: BTreeMap<u64, Counts>,
    pub by_n: BTreeMap<usize, Counts>,
    /// How many cases hit each rank `r_p`.
    pub by_rank: BTreeMap<usize, usize>,
}

impl ConjectureSweep {
    /// Graphs in case order.
    fn graphs(&self) -> Vec<Dag> {
        match self.mode {
            SweepMode::Exhaustive { n_min, n_max } => (n_min..=n_max).flat_map(labeled_graphs).collect(),
            SweepMode::Random { count, n, seed } => (0..count)
                .map(|k| random_graph(&mut case_rng(seed, k as u64), n))
                .collect(),
        }
    }

    /// Number of `(graph, p)` cases.
    pub fn case_count(&self) -> u64 {
        let graphs: u64 = match self.mode {
            SweepMode::Exhaustive { n_min, n_max } => (n_min..=n_max).map(labeled_graph_count).sum(),
            SweepMode::Random { count, .. } => count as u64,
        };
        graphs * self.primes.len() as u64
    }

    /// Evaluates every case; ordered by graph, then by prime.
    pub fn run(&self) -> Result<(Vec<ConjectureCase>, ConjectureSummary)> {
        check_primes(&self.primes)?;
        let graphs = self.graphs();
        let cases: Vec<ConjectureCase> = graphs
            .par_iter()
            .map(|g| {
                self.primes
                    .iter()
                    .map(|&p| check_conjecture(g, p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let summary = self.summarize(&cases);
        Ok((cases, summary))
    }

    fn summarize(&self, cases: &[ConjectureCase]) -> ConjectureSummary {
        let mut s = ConjectureSummary {
            sweep: self.clone(),
            cases: cases.len(),
            holds: 0,
            violated: 0,
            by_prime: BTreeMap::new(),
            by_n: BTreeMap::new(),
            by_rank: BTreeMap::new(),
        };
        for c in cases {
            let holds = c.verdict == Verdict::Holds;
            let bump = |counts: &mut Counts| {
                if holds {
                    counts.holds += 1;
                } else {
                    counts.violated += 1;
                }
            };
            bump(s.by_prime.entry(c.p).or_default());
            bump(s.by_n.entry(c.graph.n).or_default());
            *s.by_rank.entry(c.r_p).or_default() += 1;
            if holds {
                s.holds += 1;
            } else {
                s.violated += 1;
            }
        }
        s
    }
}
