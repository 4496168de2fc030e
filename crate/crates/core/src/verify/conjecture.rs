use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{checked_alphas, Verdict};
use crate::dag::{Dag, GraphJson};
use crate::error::{Error, Result};
use crate::ghs::GhsInstance;
use crate::linalg::{is_prime, rank_mod_p};

/// One `(G, p)` case of the rank conjecture: with `r_p` the rank of the
/// adjacency matrix over `Z/pZ`, the SNF of `A_{p,G}` should satisfy
/// `α_{r_p} = 1` and `α_{r_p+1} > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCase {
    pub graph: GraphJson,
    pub p: u64,
    pub r_p: usize,
    #[serde(with = "crate::decimal::vec")]
    pub alphas: Vec<BigInt>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConjectureCase {
    /// Recomputes the case from its own graph and prime.
    pub fn replay(&self) -> Result<ConjectureCase> {
        check_conjecture(&self.graph.to_dag()?, self.p)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("cases serialize")
    }
}

pub fn check_conjecture(g: &Dag, p: u64) -> Result<ConjectureCase> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !g.is_topological_ordering() {
        return Err(Error::NotTopological);
    }
    let n = g.n();
    let r_p = rank_mod_p(&g.adjacency_matrix(), p)?;
    let inst = GhsInstance::constant(p, g.clone())?;
    let (alphas, agree) = checked_alphas(inst.matrix())?;

    // 1-based α_k is alphas[k - 1]; α_0 = 1 by convention
    let unit_ok = r_p == 0 || alphas[r_p - 1].is_one();
    let mut note = None;
    let next_ok = if r_p < n {
        alphas[r_p] > BigInt::one()
    } else {
        note = Some(format!("r_p = n = {n}: no alpha_(r_p+1) to test"));
        true
    };
    let verdict = if !agree {
        note = Some("elimination and minors oracle disagree".into());
        Verdict::Violated
    } else if unit_ok && next_ok {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    Ok(ConjectureCase {
        graph: GraphJson::from(g),
        p,
        r_p,
        alphas,
        verdict,
        note,
    })
}
