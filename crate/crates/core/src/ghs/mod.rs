//! The matrix `A_{d,G} = diag(d) + Σ_{(i,j) ∈ E(G)} E_{i,j}` and the
//! special submatrices whose determinants are governed by paths of `G`.

mod fpp;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dag::{enumerate_paths, gap_product, gaps, path_length_profile, Dag, GraphJson};
use crate::error::{Error, Result};
use crate::linalg::{snf, IntMatrix, SnfResult};

pub use fpp::{fpp_group_check, fpp_lattice_points, predicted_order_multiset, FppGroupCheck, DEFAULT_FPP_CAP};

/// A diagonal vector, a DAG, and the realised matrix `A_{d,G}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhsInstance {
    d: Vec<BigInt>,
    g: Dag,
    matrix: IntMatrix,
}

/// The bordered `(n+1) x (n+1)` matrix `[[1, 1^T], [0, A_{d,G}]]` whose
/// columns span the fundamental parallelepiped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedMatrix {
    pub matrix: IntMatrix,
}

impl GhsInstance {
    /// Any DAG labeling is accepted; operations that need the topological
    /// ordering check it themselves.
    pub fn build(d: Vec<BigInt>, g: Dag) -> Result<GhsInstance> {
        if d.len() != g.n() {
            return Err(Error::DimensionMismatch {
                expected: g.n(),
                got: d.len(),
            });
        }
        if let Some(i) = d.iter().position(|x| !x.is_positive()) {
            return Err(Error::NonPositiveDiagonal {
                index: i + 1,
                value: d[i].to_string(),
            });
        }
        let mut matrix = IntMatrix::diagonal(&d);
        for (i, j) in g.edges() {
            matrix[(i - 1, j - 1)] = BigInt::one();
        }
        Ok(GhsInstance { d, g, matrix })
    }

    /// Constant diagonal `(m, ..., m)`.
    pub fn constant(m: impl Into<BigInt>, g: Dag) -> Result<GhsInstance> {
        let m = m.into();
        GhsInstance::build(vec![m; g.n()], g)
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn d(&self) -> &[BigInt] {
        &self.d
    }

    pub fn graph(&self) -> &Dag {
        &self.g
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `Some(m)` when every diagonal entry equals `m`.
    pub fn constant_diagonal(&self) -> Option<&BigInt> {
        let first = self.d.first()?;
        self.d.iter().all(|x| x == first).then_some(first)
    }

    pub fn snf(&self) -> Result<SnfResult> {
        snf(&self.matrix)
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        use num_integer::Integer;
        (0..self.d.len()).all(|i| (i + 1..self.d.len()).all(|j| self.d[i].gcd(&self.d[j]).is_one()))
    }

    /// Relabels the graph by `t` and moves each weight with its vertex.
    pub fn relabel(&self, t: &[usize]) -> Result<GhsInstance> {
        let g = self.g.relabel(t)?;
        GhsInstance::build(permute_diagonal(&self.d, t)?, g)
    }

    fn require_topological(&self) -> Result<()> {
        if self.g.is_topological_ordering() {
            Ok(())
        } else {
            Err(Error::NotTopological)
        }
    }

    fn check_ab(&self, a: usize, b: usize) -> Result<()> {
        self.require_topological()?;
        if a < 1 || b < 1 || a + b > self.n() {
            return Err(Error::OutOfRange(format!(
                "M_{{a,b}} needs 1 <= a, 1 <= b, a + b <= n; got a = {a}, b = {b}, n = {}",
                self.n()
            )));
        }
        Ok(())
    }

    /// `M_{a,b}`: rows `a..a+b-1` and columns `a+1..a+b` (1-based) of `A`.
    /// Its first row holds the indicators `x_{a,a+1..a+b}` and its
    /// subdiagonal holds `d_{a+1..a+b-1}`.
    pub fn submatrix_m(&self, a: usize, b: usize) -> Result<IntMatrix> {
        self.check_ab(a, b)?;
        let rows: Vec<usize> = (a - 1..a - 1 + b).collect();
        let cols: Vec<usize> = (a..a + b).collect();
        Ok(self.matrix.select(&rows, &cols))
    }

    /// `Σ_{P = (a -> ... -> a+b)} (-1)^{b - ℓ(P) + 1} g(P)`, evaluated from
    /// the path list alone.
    pub fn minor_det_path_sum(&self, a: usize, b: usize) -> Result<BigInt> {
        self.check_ab(a, b)?;
        let mut total = BigInt::zero();
        for p in enumerate_paths(&self.g, a, a + b) {
            let weight = gap_product(&self.d, &gaps(&self.g, &p)?)?;
            if (b + 1 - p.len()).is_multiple_of(2) {
                total += weight;
            } else {
                total -= weight;
            }
        }
        Ok(total)
    }

    /// `A_{c,r}`: delete column `c` and row `r` (1-based).
    pub fn submatrix_a_cr(&self, c: usize, r: usize) -> Result<IntMatrix> {
        let n = self.n();
        if c < 1 || r < 1 || c > n || r > n {
            return Err(Error::OutOfRange(format!(
                "A_{{c,r}} needs c, r in [{n}]; got c = {c}, r = {r}"
            )));
        }
        Ok(self.matrix.delete(r - 1, c - 1))
    }

    /// `det A_{c,r} = Σ_{i >= 2} (-1)^{r - c - i + 1} f_{c,r}(i) m^{n - i}`
    /// for a constant diagonal `m`, from path counts alone.
    pub fn det_a_cr_polynomial(&self, c: usize, r: usize) -> Result<BigInt> {
        let m = self.constant_diagonal().ok_or(Error::NonConstantDiagonal)?.clone();
        self.require_topological()?;
        let n = self.n();
        if c < 1 || r < 1 || c > n || r > n {
            return Err(Error::OutOfRange(format!(
                "A_{{c,r}} needs c, r in [{n}]; got c = {c}, r = {r}"
            )));
        }
        if c == r {
            return Err(Error::DiagonalDeletion(c));
        }
        let profile = path_length_profile(&self.g, c, r);
        let mut total = BigInt::zero();
        for (len, count) in profile.iter().enumerate().skip(2) {
            if count.is_zero() {
                continue;
            }
            let term = BigInt::from(count.clone()) * num_traits::pow(m.clone(), n - len);
            let exponent = r as i64 - c as i64 - len as i64 + 1;
            if exponent.rem_euclid(2) == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        Ok(total)
    }

    pub fn lift(&self) -> LiftedMatrix {
        let n = self.n();
        let mut l = IntMatrix::zeros(n + 1, n + 1);
        for j in 0..=n {
            l[(0, j)] = BigInt::one();
        }
        for i in 0..n {
            for j in 0..n {
                l[(i + 1, j + 1)] = self.matrix[(i, j)].clone();
            }
        }
        LiftedMatrix { matrix: l }
    }
}

/// Weights after relabeling by `t`: vertex `t(v)` carries `d_v`, so entry
/// `u` of the result is `d_{t^{-1}(u)}`.
pub fn permute_diagonal(d: &[BigInt], t: &[usize]) -> Result<Vec<BigInt>> {
    crate::dag::check_permutation(t, d.len())?;
    let mut out = vec![BigInt::zero(); d.len()];
    for (v, &tv) in t.iter().enumerate() {
        out[tv - 1] = d[v].clone();
    }
    Ok(out)
}

/// Instance file: `{"d": ["2", "5", "3"], "graph": {...}}`; entries of `d`
/// may also be plain JSON integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    #[serde(with = "crate::decimal::vec")]
    pub d: Vec<BigInt>,
    pub graph: GraphJson,
}

impl InstanceJson {
    pub fn to_instance(&self) -> Result<GhsInstance> {
        GhsInstance::build(self.d.clone(), self.graph.to_dag()?)
    }

    pub fn parse(text: &str) -> Result<GhsInstance> {
        let raw: InstanceJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.to_instance()
    }
}

impl From<&GhsInstance> for InstanceJson {
    fn from(inst: &GhsInstance) -> Self {
        InstanceJson {
            d: inst.d.clone(),
            graph: GraphJson::from(&inst.g),
        }
    }
}
