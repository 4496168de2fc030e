//! Deterministic instance generators.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dag::{Bipartition, Dag};

/// Edge probabilities for random graphs.
pub const EDGE_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

/// Independent generator for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The pairs `i < j` of `[n]` in lexicographic order.
pub fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Number of labeled simple graphs on `[n]`.
pub fn labeled_graph_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

/// Topological orientation of the graph whose edge set is selected by the
/// bits of `mask` over [`vertex_pairs`].
pub fn graph_from_mask(n: usize, mask: u64) -> Dag {
    let edges = vertex_pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, e)| e);
    Dag::topological_orientation(n, edges).expect("pairs of [n] are valid")
}

/// All `2^(n choose 2)` labeled graphs on `[n]`, oriented, in mask order.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Dag> {
    (0..labeled_graph_count(n)).map(move |mask| graph_from_mask(n, mask))
}

/// Erdős–Rényi graph on `[n]` with edge probability drawn from
/// [`EDGE_PROBABILITIES`], oriented towards larger labels.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Dag {
    let p = EDGE_PROBABILITIES[rng.random_range(0..EDGE_PROBABILITIES.len())];
    let edges: Vec<_> = vertex_pairs(n).into_iter().filter(|_| rng.random_bool(p)).collect();
    Dag::topological_orientation(n, edges).expect("pairs of [n] are valid")
}

pub fn random_diagonal<R: Rng>(rng: &mut R, n: usize, lo: u64, hi: u64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.random_range(lo..=hi))).collect()
}

/// Pairwise-coprime entries in `[lo, hi]`, each redrawn until it is coprime
/// to the earlier ones. Needs `lo == 1` or a range rich enough to succeed.
pub fn random_coprime_diagonal<R: Rng>(rng: &mut R, n: usize, lo: u64, hi: u64) -> Vec<BigInt> {
    let mut out: Vec<u64> = Vec::with_capacity(n);
    while out.len() < n {
        let x = rng.random_range(lo..=hi);
        if out.iter().all(|y| x.gcd(y) == 1) {
            out.push(x);
        }
    }
    out.into_iter().map(BigInt::from).collect()
}

/// Uniform permutation of `[n]` as the list `t(1), ..., t(n)`.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut t: Vec<usize> = (1..=n).collect();
    t.shuffle(rng);
    t
}

/// Every bipartite DAG with sources `{1..u}` and sinks `{u+1..u+v}`, one
/// per subset of `U x V`.
pub fn bipartite_dags(u: usize, v: usize) -> impl Iterator<Item = (Dag, Bipartition)> {
    let pairs: Vec<(usize, usize)> = (1..=u).flat_map(|a| (u + 1..=u + v).map(move |b| (a, b))).collect();
    let bip = Bipartition::new((1..=u).collect(), (u + 1..=u + v).collect());
    (0..1u64 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        (Dag::new(u + v, edges).expect("U -> V edges are acyclic"), bip.clone())
    })
}
