use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use super::Dag;
use crate::error::{Error, Result};

/// A directed path `v_1 -> ... -> v_k`; its length is `k`, the number of
/// vertices visited.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    /// Checks that consecutive vertices are edges of `g`.
    pub fn new(g: &Dag, vertices: Vec<usize>) -> Result<Path> {
        let valid = !vertices.is_empty()
            && vertices.iter().all(|&v| v >= 1 && v <= g.n())
            && vertices.windows(2).all(|w| g.has_edge(w[0], w[1]));
        if valid {
            Ok(Path { vertices })
        } else {
            Err(Error::NotAPath(vertices))
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().expect("paths are nonempty")
    }
}

/// The labels strictly between a path's endpoints that it skips.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapSet {
    pub path: Path,
    pub gaps: BTreeSet<usize>,
    /// Vertex count of the host graph.
    pub n: usize,
}

/// All directed paths from `from` to `to`, in lexicographic order.
///
/// Paths join distinct endpoints: `from == to` yields no paths.
pub fn enumerate_paths(g: &Dag, from: usize, to: usize) -> Vec<Path> {
    let n = g.n();
    if from == to || from == 0 || to == 0 || from > n || to > n {
        return Vec::new();
    }
    // prune to vertices that can still reach `to`
    let mut reaches = vec![false; n];
    reaches[to - 1] = true;
    for v in g.topological_order().into_iter().rev() {
        if g.successors(v).iter().any(|&w| reaches[w - 1]) {
            reaches[v - 1] = true;
        }
    }
    let mut out = Vec::new();
    if !reaches[from - 1] {
        return out;
    }
    let mut stack = vec![from];
    walk(g, to, &reaches, &mut stack, &mut out);
    out
}

fn walk(g: &Dag, to: usize, reaches: &[bool], stack: &mut Vec<usize>, out: &mut Vec<Path>) {
    let v = *stack.last().expect("stack starts nonempty");
    for &w in g.successors(v) {
        if !reaches[w - 1] {
            continue;
        }
        stack.push(w);
        if w == to {
            out.push(Path {
                vertices: stack.clone(),
            });
        } else {
            walk(g, to, reaches, stack, out);
        }
        stack.pop();
    }
}

/// `profile[k]` is the number of paths from `c` to `r` with `k` vertices.
///
/// Counts are accumulated per vertex in reverse topological order, so no path
/// is materialised. Empty when `c == r`.
pub fn path_length_profile(g: &Dag, c: usize, r: usize) -> Vec<BigUint> {
    let n = g.n();
    if c == r || c == 0 || r == 0 || c > n || r > n {
        return Vec::new();
    }
    // suffix[v][k]: paths v -> r with k vertices
    let mut suffix: Vec<Vec<BigUint>> = vec![Vec::new(); n];
    suffix[r - 1] = vec![BigUint::zero(), BigUint::one()];
    for v in g.topological_order().into_iter().rev() {
        if v == r {
            continue;
        }
        let mut acc: Vec<BigUint> = Vec::new();
        for &w in g.successors(v) {
            let tail = &suffix[w - 1];
            if acc.len() < tail.len() + 1 {
                acc.resize(tail.len() + 1, BigUint::zero());
            }
            for (k, cnt) in tail.iter().enumerate() {
                acc[k + 1] += cnt;
            }
        }
        suffix[v - 1] = acc;
    }
    std::mem::take(&mut suffix[c - 1])
}

/// `f_{c,r}(length)`: the number of paths `c -> ... -> r` visiting exactly
/// `length` vertices.
pub fn path_count(g: &Dag, c: usize, r: usize, length: usize) -> BigUint {
    path_length_profile(g, c, r)
        .get(length)
        .cloned()
        .unwrap_or_else(BigUint::zero)
}

/// Gap set of `path` in a topologically ordered graph.
pub fn gaps(g: &Dag, path: &Path) -> Result<GapSet> {
    if !g.is_topological_ordering() {
        return Err(Error::NotTopological);
    }
    let path = Path::new(g, path.vertices.clone())?;
    let on_path: BTreeSet<usize> = path.vertices.iter().copied().collect();
    let gaps = (path.first() + 1..path.last())
        .filter(|u| !on_path.contains(u))
        .collect();
    Ok(GapSet { path, gaps, n: g.n() })
}

/// `g(P)`: product of `d_u` over the gaps `u`, 1 when there are none.
pub fn gap_product(d: &[BigInt], gs: &GapSet) -> Result<BigInt> {
    if d.len() != gs.n {
        return Err(Error::DimensionMismatch {
            expected: gs.n,
            got: d.len(),
        });
    }
    Ok(gs.gaps.iter().map(|&u| &d[u - 1]).product())
}
