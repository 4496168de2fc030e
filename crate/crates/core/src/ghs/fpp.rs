//! Integer points of the half-open fundamental parallelepiped and their
//! group structure modulo the lattice spanned by the lifted columns.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::GhsInstance;
use crate::error::{Error, Result};
use crate::linalg::{det, IntMatrix};

/// Default bound on `|det A|` for point enumeration.
pub const DEFAULT_FPP_CAP: u64 = 100_000;

/// Result of comparing the point group with the SNF-predicted group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FppGroupCheck {
    pub point_count: usize,
    #[serde(with = "crate::decimal")]
    pub det: BigInt,
    #[serde(with = "crate::decimal::vec")]
    pub invariant_factors: Vec<BigInt>,
    /// element order -> number of points of that order
    #[serde(serialize_with = "crate::decimal::counts::serialize")]
    pub point_orders: BTreeMap<BigInt, u64>,
    #[serde(serialize_with = "crate::decimal::counts::serialize")]
    pub predicted_orders: BTreeMap<BigInt, u64>,
    pub matches: bool,
}

/// The lifted matrix `L` together with `adj = |det L| * L^{-1}` (sign
/// folded in), so that `x = L^{-1} z` lies in `[0,1)^{n+1}` iff every entry
/// of `adj * z` lies in `[0, |det L|)`.
struct Preimage {
    lifted: IntMatrix,
    adj: IntMatrix,
    det: BigInt,
}

impl Preimage {
    fn new(inst: &GhsInstance, cap: &BigInt) -> Result<Preimage> {
        let lifted = inst.lift().matrix;
        let d = det(&lifted)?;
        if d.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        if &d.abs() > cap {
            return Err(Error::TooLarge {
                det: d.to_string(),
                cap: cap.to_string(),
            });
        }
        let inv = rational_inverse(&lifted);
        let scale = BigRational::from_integer(d.abs());
        let size = lifted.rows();
        let mut adj = IntMatrix::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                let v = &inv[i][j] * &scale;
                debug_assert!(v.is_integer());
                adj[(i, j)] = v.to_integer();
            }
        }
        Ok(Preimage {
            lifted,
            adj,
            det: d.abs(),
        })
    }
}

/// Gauss-Jordan inverse over the rationals; `a` must be invertible.
fn rational_inverse(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = a.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(a[(i, j)].clone())
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("matrix is invertible");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in &mut m[c] {
            *v *= &inv;
        }
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Enumerates the integer points `z = L x`, `x ∈ [0,1)^{n+1}`, by scanning the
/// box bounded by each row's negative and positive entry sums and keeping the
/// points whose exact preimage lies in the half-open cube. Sorted ascending.
pub fn fpp_lattice_points(inst: &GhsInstance, cap: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let pre = Preimage::new(inst, cap)?;
    Ok(scan(&pre).into_iter().map(|(z, _)| z).collect())
}

/// Each point with `y = adj * z`.
fn scan(pre: &Preimage) -> Vec<(Vec<BigInt>, Vec<BigInt>)> {
    let size = pre.lifted.rows();
    let (lo, hi): (Vec<BigInt>, Vec<BigInt>) = (0..size)
        .map(|i| {
            let row = pre.lifted.row(i);
            let neg: BigInt = row.iter().filter(|v| v.is_negative()).sum();
            let pos: BigInt = row.iter().filter(|v| v.is_positive()).sum();
            (neg, pos)
        })
        .unzip();

    let column = |j: usize| -> Vec<BigInt> { (0..size).map(|i| pre.adj[(i, j)].clone()).collect() };
    let columns: Vec<Vec<BigInt>> = (0..size).map(column).collect();

    let mut z = lo.clone();
    let mut y: Vec<BigInt> = (0..size)
        .map(|i| (0..size).map(|j| &pre.adj[(i, j)] * &z[j]).sum())
        .collect();
    let mut out = Vec::new();
    loop {
        if y.iter().all(|v| !v.is_negative() && v < &pre.det) {
            out.push((z.clone(), y.clone()));
        }
        // odometer, last coordinate fastest
        let mut k = size;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if z[k] < hi[k] {
                z[k] += 1;
                for (yi, ci) in y.iter_mut().zip(&columns[k]) {
                    *yi += ci;
                }
                break;
            }
            let span = &hi[k] - &lo[k];
            for (yi, ci) in y.iter_mut().zip(&columns[k]) {
                *yi -= ci * &span;
            }
            z[k] = lo[k].clone();
        }
    }
}

/// Compares the multiset of element orders of the point group with the one
/// of `Z/α_1 ⊕ ... ⊕ Z/α_n`.
pub fn fpp_group_check(inst: &GhsInstance, cap: &BigInt) -> Result<FppGroupCheck> {
    let pre = Preimage::new(inst, cap)?;
    let points = scan(&pre);
    let mut point_orders = BTreeMap::new();
    for (_, y) in &points {
        // k z lies in the lattice iff k y ≡ 0 (mod det) componentwise
        let g = y.iter().fold(pre.det.clone(), |g, v| g.gcd(v));
        *point_orders.entry(&pre.det / g).or_insert(0u64) += 1;
    }
    let invariant_factors = inst.snf()?.diagonal;
    let predicted_orders = predicted_order_multiset(&invariant_factors);
    Ok(FppGroupCheck {
        point_count: points.len(),
        det: pre.det,
        matches: point_orders == predicted_orders,
        invariant_factors,
        point_orders,
        predicted_orders,
    })
}

/// Element-order multiset of `⊕ Z/α_i` by enumerating its elements.
pub fn predicted_order_multiset(alphas: &[BigInt]) -> BTreeMap<BigInt, u64> {
    let factors: Vec<u64> = alphas
        .iter()
        .filter(|a| !a.is_one())
        .map(|a| a.to_u64().expect("group order within enumeration cap"))
        .collect();
    let mut out = BTreeMap::new();
    let mut e = vec![0u64; factors.len()];
    loop {
        let order = factors
            .iter()
            .zip(&e)
            .fold(1u64, |acc, (&a, &x)| acc.lcm(&(a / a.gcd(&x))));
        *out.entry(BigInt::from(order)).or_insert(0) += 1;
        let mut k = factors.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            e[k] += 1;
            if e[k] < factors[k] {
                break;
            }
            e[k] = 0;
        }
    }
}
