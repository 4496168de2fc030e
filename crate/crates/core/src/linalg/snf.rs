//! Smith normal form by minimal-pivot elimination.
//!
//! The working submatrix is reduced by repeatedly moving its nonzero entry of
//! least absolute value to the pivot position and clearing the pivot row and
//! column with truncated quotients. Each pass either clears both or produces a
//! strictly smaller remainder, so the loop terminates. A final pass replaces
//! diagonal pairs `(a, b)` by `(gcd, lcm)` with a unimodular 2x2 transform
//! until every entry divides the next.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::IntMatrix;
use crate::error::{Error, Result};

/// Invariant factors with unimodular transforms, `left * A * right = D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    /// `α_1, ..., α_min(rows, cols)`; nonzero entries come first.
    #[serde(with = "crate::decimal::vec")]
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|a| !a.is_zero()).count()
    }

    /// The diagonal entries different from 1, in order.
    pub fn nonunit(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|a| !a.is_one()).cloned().collect()
    }

    /// The diagonal matrix `D` with the shape of the source matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, a) in self.diagonal.iter().enumerate() {
            d[(i, i)] = a.clone();
        }
        d
    }
}

pub fn snf(a: &IntMatrix) -> Result<SnfResult> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut rank = 0;

    'outer: for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_pivot(&w, k) else {
                break 'outer;
            };
            w.swap_rows(k, pi);
            left.swap_rows(k, pi);
            w.swap_cols(k, pj);
            right.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if w[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&w[(i, k)] / &w[(k, k)]);
                w.add_row_multiple(i, k, &q);
                left.add_row_multiple(i, k, &q);
                clean &= w[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                if w[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&w[(k, j)] / &w[(k, k)]);
                w.add_col_multiple(j, k, &q);
                right.add_col_multiple(j, k, &q);
                clean &= w[(k, j)].is_zero();
            }
            if clean {
                break;
            }
        }
        if w[(k, k)].is_negative() {
            w.negate_row(k);
            left.negate_row(k);
        }
        rank += 1;
    }

    // After processing index i, d_i divides every later entry, and gcd/lcm
    // replacements among later entries keep them multiples of d_i.
    for i in 0..rank {
        for j in i + 1..rank {
            let (a, b) = (w[(i, i)].clone(), w[(j, j)].clone());
            if b.is_multiple_of(&a) {
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let b_g = &b / &g;
            let a_g = &a / &g;
            let row_coeffs = [&BigInt::one(), &BigInt::one(), &(-&t * &b_g), &(&s * &a_g)];
            let col_coeffs = [&s, &(-&b_g), &t, &a_g];
            w.combine_rows(i, j, row_coeffs);
            left.combine_rows(i, j, row_coeffs);
            w.combine_cols(i, j, col_coeffs);
            right.combine_cols(i, j, col_coeffs);
            debug_assert_eq!(w[(i, i)], g);
        }
    }

    Ok(SnfResult {
        diagonal: w.main_diagonal(),
        left,
        right,
    })
}

/// Nonzero entry of least absolute value in `w[k.., k..]`; ties go to the
/// lowest row, then the lowest column.
fn min_pivot(w: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..w.rows() {
        for j in k..w.cols() {
            let v = &w[(i, j)];
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                let unit = abs.is_one();
                best = Some(((i, j), abs));
                if unit {
                    return best.map(|(p, _)| p);
                }
            }
        }
    }
    best.map(|(p, _)| p)
}
