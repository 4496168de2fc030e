//! Labeled simple DAGs on `[n] = {1, ..., n}`.
//!
//! Vertex labels are 1-based throughout. Paths are counted by the number of
//! vertices they visit, so a single edge is a path of length 2.

mod families;
mod io;
mod paths;

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub use families::Family;
pub use io::{parse_edge_list, GraphJson};
pub use paths::{enumerate_paths, gap_product, gaps, path_count, path_length_profile, GapSet, Path};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dag {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    succ: Vec<Vec<usize>>,
}

impl Dag {
    /// Validates labels, simplicity and acyclicity.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Dag> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidEdge(i, j));
            }
            if !set.insert((i, j)) {
                return Err(Error::DuplicateEdge(i, j));
            }
        }
        let dag = Dag::from_set(n, set);
        if dag.topological_order().len() != n {
            return Err(Error::Cyclic);
        }
        Ok(dag)
    }

    pub fn edgeless(n: usize) -> Dag {
        Dag::from_set(n, BTreeSet::new())
    }

    fn from_set(n: usize, edges: BTreeSet<(usize, usize)>) -> Dag {
        let mut succ = vec![Vec::new(); n];
        for &(i, j) in &edges {
            succ[i - 1].push(j);
        }
        Dag { n, edges, succ }
    }

    /// Orients every undirected edge `{i, j}` towards the larger label.
    ///
    /// Input pairs are treated as a set, so `{1, 2}` and `{2, 1}` coincide.
    pub fn topological_orientation(n: usize, undirected: impl IntoIterator<Item = (usize, usize)>) -> Result<Dag> {
        let mut set = BTreeSet::new();
        for (i, j) in undirected {
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidEdge(i, j));
            }
            set.insert((i.min(j), i.max(j)));
        }
        Ok(Dag::from_set(n, set))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// Out-neighbours of `v`, ascending.
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v - 1]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.succ[v - 1].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(_, j)| j == v).count()
    }

    /// True iff every edge `(i, j)` has `i < j`.
    pub fn is_topological_ordering(&self) -> bool {
        self.edges.iter().all(|&(i, j)| i < j)
    }

    /// Kahn ordering (smallest available label first). Shorter than `n` iff
    /// the edge set has a cycle.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut indeg = vec![0usize; self.n];
        for &(_, j) in &self.edges {
            indeg[j - 1] += 1;
        }
        let mut ready: BTreeSet<usize> = (1..=self.n).filter(|&v| indeg[v - 1] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &self.succ[v - 1] {
                indeg[w - 1] -= 1;
                if indeg[w - 1] == 0 {
                    ready.insert(w);
                }
            }
        }
        order
    }

    /// Image of the graph under `v -> t[v - 1]`, with `t` a permutation of `[n]`.
    pub fn relabel(&self, t: &[usize]) -> Result<Dag> {
        check_permutation(t, self.n)?;
        let set = self.edges.iter().map(|&(i, j)| (t[i - 1], t[j - 1])).collect();
        Ok(Dag::from_set(self.n, set))
    }

    /// Maximum number of vertices on a directed path; 1 for a nonempty
    /// edgeless graph, 0 for the empty graph.
    pub fn longest_path_length(&self) -> usize {
        let mut best = vec![1usize; self.n];
        for v in self.topological_order().into_iter().rev() {
            let tail = self.succ[v - 1].iter().map(|&w| best[w - 1]).max().unwrap_or(0);
            best[v - 1] = 1 + tail;
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// `B = Σ E_{i,j}` over the edges, an `n x n` 0/1 matrix.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut b = IntMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            b[(i - 1, j - 1)] = BigInt::one();
        }
        b
    }

    /// True iff the edges form one directed path through all `n` vertices
    /// (any labeling). A single vertex counts as a path of length 1.
    pub fn is_spanning_path(&self) -> bool {
        if self.n == 0 || self.edges.len() + 1 != self.n {
            return false;
        }
        let starts: Vec<usize> = (1..=self.n).filter(|&v| self.in_degree(v) == 0).collect();
        if starts.len() != 1 || (1..=self.n).any(|v| self.out_degree(v) > 1) {
            return false;
        }
        let mut v = starts[0];
        let mut seen = 1;
        while let Some(&w) = self.succ[v - 1].first() {
            v = w;
            seen += 1;
        }
        seen == self.n
    }

    /// True iff the edges form a single directed path on some vertices and
    /// every other vertex is isolated, without that path spanning `[n]`.
    pub fn is_partial_path(&self) -> bool {
        if self.edges.is_empty() || self.is_spanning_path() {
            return false;
        }
        let touched: BTreeSet<usize> = self.edges.iter().flat_map(|&(i, j)| [i, j]).collect();
        let starts = touched.iter().filter(|&&v| self.in_degree(v) == 0).count();
        let branching = touched.iter().any(|&v| self.in_degree(v) > 1 || self.out_degree(v) > 1);
        starts == 1 && !branching && self.edges.len() + 1 == touched.len()
    }

    /// Disjoint union with `other`'s labels shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Dag) -> Dag {
        let shift = self.n;
        let set = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(i, j)| (i + shift, j + shift)))
            .collect();
        Dag::from_set(self.n + other.n, set)
    }

    /// Vertices reachable from `v` (including `v`).
    pub fn reachable_from(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.succ[u - 1] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

pub(crate) fn check_permutation(t: &[usize], n: usize) -> Result<()> {
    if t.len() != n {
        return Err(Error::NotPermutation(n));
    }
    let mut seen = vec![false; n];
    for &v in t {
        if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::NotPermutation(n));
        }
    }
    Ok(())
}

/// A split `[n] = U ⊔ V` for bipartite DAGs with every edge directed `U -> V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

impl Bipartition {
    pub fn new(sources: Vec<usize>, sinks: Vec<usize>) -> Bipartition {
        Bipartition { sources, sinks }
    }

    /// Sources are the vertices without in-edges, sinks the rest. `None`
    /// when some sink also has an out-edge.
    pub fn infer(g: &Dag) -> Option<Bipartition> {
        let (sources, sinks): (Vec<usize>, Vec<usize>) = (1..=g.n()).partition(|&v| g.in_degree(v) == 0);
        sinks
            .iter()
            .all(|&v| g.out_degree(v) == 0)
            .then(|| Bipartition::new(sources, sinks))
    }

    /// Checks that the parts partition `[n]` and that every edge goes from
    /// `sources` to `sinks`.
    pub fn validate(&self, g: &Dag) -> Result<()> {
        let mut side = vec![None; g.n()];
        for (part, verts) in [(0u8, &self.sources), (1u8, &self.sinks)] {
            for &v in verts {
                if v == 0 || v > g.n() || side[v - 1].is_some() {
                    return Err(Error::NotBipartite(format!("vertex {v} is repeated or out of range")));
                }
                side[v - 1] = Some(part);
            }
        }
        if let Some(v) = side.iter().position(Option::is_none) {
            return Err(Error::NotBipartite(format!("vertex {} is in neither part", v + 1)));
        }
        for (i, j) in g.edges() {
            if side[i - 1] != Some(0) || side[j - 1] != Some(1) {
                return Err(Error::NotBipartite(format!("edge ({i}, {j}) is not directed U -> V")));
            }
        }
        Ok(())
    }
}
