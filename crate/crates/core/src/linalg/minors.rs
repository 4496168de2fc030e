use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::det::bareiss;
use super::IntMatrix;
use crate::error::{Error, Result};

/// Determinantal divisors `δ_0 = 1, δ_1, ..., δ_k` for `k = min(rows, cols)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorGcdProfile {
    #[serde(with = "crate::decimal::vec")]
    pub deltas: Vec<BigInt>,
}

impl MinorGcdProfile {
    /// `α_i = δ_i / δ_{i-1}`, with `α_i = 0` once the minors vanish.
    pub fn alphas(&self) -> Vec<BigInt> {
        self.deltas
            .windows(2)
            .map(|w| if w[1].is_zero() { BigInt::zero() } else { &w[1] / &w[0] })
            .collect()
    }

    pub fn delta(&self, i: usize) -> &BigInt {
        &self.deltas[i]
    }
}

/// Exhaustive gcd over all `i x i` minors for every `i`.
///
/// Intended as an oracle for small matrices. The scan of level `i` stops as
/// soon as the running gcd reaches `δ_{i-1}`, the least value it can take.
pub fn minor_gcd_profile(a: &IntMatrix) -> Result<MinorGcdProfile> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let k = a.rows().min(a.cols());
    let mut deltas = vec![BigInt::one()];
    for i in 1..=k {
        let prev = deltas[i - 1].clone();
        let next = if prev.is_zero() {
            BigInt::zero()
        } else {
            minor_gcd_bounded(a, i, &prev)
        };
        deltas.push(next);
    }
    Ok(MinorGcdProfile { deltas })
}

/// `δ_size(a)`: gcd of the absolute values of all `size x size` minors.
pub fn minor_gcd(a: &IntMatrix, size: usize) -> BigInt {
    minor_gcd_bounded(a, size, &BigInt::one())
}

fn minor_gcd_bounded(a: &IntMatrix, size: usize, floor: &BigInt) -> BigInt {
    if size == 0 {
        return BigInt::one();
    }
    let small: Option<Vec<i64>> = a.entries().iter().map(ToPrimitive::to_i64).collect();
    let floor_small = floor.to_u128();
    // gcd of the minors seen so far, split into the part found with machine
    // integers and the part that needed big integers
    let mut g_small: u128 = 0;
    let mut g_big = BigInt::zero();
    for rows in (0..a.rows()).combinations(size) {
        for cols in (0..a.cols()).combinations(size) {
            match small.as_deref().and_then(|s| small_det(s, a.cols(), &rows, &cols)) {
                Some(0) => continue,
                Some(d) => g_small = g_small.gcd(&d.unsigned_abs()),
                None => {
                    let m: Vec<Vec<BigInt>> = rows
                        .iter()
                        .map(|&r| cols.iter().map(|&c| a[(r, c)].clone()).collect())
                        .collect();
                    let d = bareiss(m);
                    if d.is_zero() {
                        continue;
                    }
                    g_big = g_big.gcd(&d.abs());
                }
            }
            let reached = if g_big.is_zero() {
                Some(g_small) == floor_small
            } else {
                &g_big.gcd(&BigInt::from(g_small)) == floor
            };
            if reached {
                return floor.clone();
            }
        }
    }
    g_big.gcd(&BigInt::from(g_small))
}

/// Bareiss on the selected minor in `i128`; `None` on overflow.
fn small_det(entries: &[i64], width: usize, rows: &[usize], cols: &[usize]) -> Option<i128> {
    let n = rows.len();
    let mut m: Vec<i128> = rows
        .iter()
        .flat_map(|&r| cols.iter().map(move |&c| entries[r * width + c] as i128))
        .collect();
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            let Some(i) = (k + 1..n).find(|&i| m[i * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                m.swap(k * n + j, i * n + j);
            }
            negate = !negate;
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            let lead = m[i * n + k];
            for j in k + 1..n {
                let v = m[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(m[k * n + j])?)?;
                m[i * n + j] = v / prev;
            }
            m[i * n + k] = 0;
        }
        prev = pivot;
    }
    let d = m[n * n - 1];
    Some(if negate { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn worked_example_profile() {
        let a = IntMatrix::from_rows(&[[3, 0, 0], [0, 6, 1], [0, 0, 9]]).unwrap();
        let p = minor_gcd_profile(&a).unwrap();
        assert_eq!(p.deltas, ints(&[1, 1, 3, 162]));
        assert_eq!(p.alphas(), ints(&[1, 3, 54]));
    }

    #[test]
    fn identity_profile() {
        let p = minor_gcd_profile(&IntMatrix::identity(3)).unwrap();
        assert_eq!(p.deltas, ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn rank_one_profile_vanishes() {
        let a = IntMatrix::from_rows(&[[2, 4], [3, 6]]).unwrap();
        let p = minor_gcd_profile(&a).unwrap();
        assert_eq!(p.deltas, ints(&[1, 1, 0]));
        assert_eq!(p.alphas(), ints(&[1, 0]));
    }

    #[test]
    fn overflowing_minors_fall_back() {
        let big = BigInt::from(i64::MAX);
        let a = IntMatrix::from_rows(&[
            [big.clone(), BigInt::from(3), BigInt::from(0)],
            [BigInt::from(5), big.clone(), BigInt::from(7)],
            [BigInt::from(0), BigInt::from(11), big.clone()],
        ])
        .unwrap();
        let p = minor_gcd_profile(&a).unwrap();
        assert_eq!(p.delta(3), &crate::linalg::det(&a).unwrap().abs());
        assert_eq!(p.alphas(), crate::linalg::snf(&a).unwrap().diagonal);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(minor_gcd_profile(&IntMatrix::zeros(2, 2)), Err(Error::ZeroMatrix));
    }
}
