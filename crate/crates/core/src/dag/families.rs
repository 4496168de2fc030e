use serde::{Deserialize, Serialize};

use super::{Bipartition, Dag};
use crate::error::{Error, Result};

/// Named graph constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `1 -> 2 -> ... -> n`
    Path(usize),
    /// Topological orientation of `K_n`.
    Complete(usize),
    /// On `[i + 2]`: edges `(1, k)` and `(k, i + 2)` for `2 <= k <= i + 1`.
    B(usize),
    /// On `[i + 3]`: the spine `2 -> 3 -> ... -> i + 2`, edges `(1, j)` for
    /// `2 < j <= i + 2` and `(k, i + 3)` for `2 <= k < i + 2`.
    C(usize),
    /// Parts `{1..u}` and `{u+1..u+v}` with edges `(k, u + k)`, `k <= min(u, v)`.
    BipartiteMatching(usize, usize),
    /// Parts `{1..u}` and `{u+1..u+v}` with every edge `U -> V`.
    BipartiteComplete(usize, usize),
}

impl Family {
    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Path(n) | Family::Complete(n) => n,
            Family::B(i) => i + 2,
            Family::C(i) => i + 3,
            Family::BipartiteMatching(u, v) | Family::BipartiteComplete(u, v) => u + v,
        }
    }

    pub fn build(&self) -> Result<Dag> {
        let edges: Vec<(usize, usize)> = match *self {
            Family::Path(n) => {
                require(n >= 1, "path needs n >= 1")?;
                (1..n).map(|k| (k, k + 1)).collect()
            }
            Family::Complete(n) => {
                require(n >= 1, "complete graph needs n >= 1")?;
                (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
            }
            Family::B(i) => {
                require(i >= 1, "B_i needs i >= 1")?;
                (2..=i + 1).flat_map(|k| [(1, k), (k, i + 2)]).collect()
            }
            Family::C(i) => {
                require(i >= 1, "C_i needs i >= 1")?;
                let spine = (2..i + 2).map(|k| (k, k + 1));
                let from_one = (3..=i + 2).map(|j| (1, j));
                let to_last = (2..i + 2).map(|k| (k, i + 3));
                spine.chain(from_one).chain(to_last).collect()
            }
            Family::BipartiteMatching(u, v) => {
                require(u >= 1 && v >= 1, "bipartite parts need size >= 1")?;
                (1..=u.min(v)).map(|k| (k, u + k)).collect()
            }
            Family::BipartiteComplete(u, v) => {
                require(u >= 1 && v >= 1, "bipartite parts need size >= 1")?;
                (1..=u).flat_map(|a| (u + 1..=u + v).map(move |b| (a, b))).collect()
            }
        };
        Dag::new(self.vertex_count(), edges)
    }

    /// The source/sink split for the bipartite families.
    pub fn bipartition(&self) -> Option<Bipartition> {
        match *self {
            Family::BipartiteMatching(u, v) | Family::BipartiteComplete(u, v) => {
                Some(Bipartition::new((1..=u).collect(), (u + 1..=u + v).collect()))
            }
            _ => None,
        }
    }
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg.to_string()))
    }
}
