use serde::{Deserialize, Serialize};

use super::Dag;
use crate::error::{Error, Result};

/// Graph file: `{"n": 3, "edges": [[1, 2], [2, 3]]}`. With
/// `"undirected": true` the pairs are oriented towards the larger label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub undirected: bool,
}

impl GraphJson {
    pub fn to_dag(&self) -> Result<Dag> {
        let pairs = self.edges.iter().map(|&[i, j]| (i, j));
        if self.undirected {
            Dag::topological_orientation(self.n, pairs)
        } else {
            Dag::new(self.n, pairs)
        }
    }

    pub fn parse(text: &str) -> Result<Dag> {
        let g: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        g.to_dag()
    }
}

impl From<&Dag> for GraphJson {
    fn from(g: &Dag) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().map(|(i, j)| [i, j]).collect(),
            undirected: false,
        }
    }
}

/// Edge-list text: `n` on the first line, then one directed `i j` pair per
/// line. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Dag> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("missing vertex count".into()))?
        .parse()
        .map_err(|_| Error::Parse("vertex count is not an integer".into()))?;
    let mut edges = Vec::new();
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [i, j] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected `i j`, got {line:?}")));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad vertex {s:?}")))
        };
        edges.push((parse(i)?, parse(j)?));
    }
    Dag::new(n, edges)
}
