use num_traits::Signed;

use super::IntMatrix;
use crate::error::{Error, Result};

/// Upper-triangular Hermite normal form test: non-negative entries, zeros
/// below the diagonal, and each column's strict maximum on the diagonal.
pub fn is_hnf(a: &IntMatrix) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.entries().iter().any(Signed::is_negative) || !a.is_upper_triangular() {
        return Ok(false);
    }
    let n = a.rows();
    Ok((0..n).all(|j| (0..n).all(|i| i == j || a[(i, j)] < a[(j, j)])))
}
