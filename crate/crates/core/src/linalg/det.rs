use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Every division in the inner update is exact, so intermediate entries are
/// themselves minors of the input and grow only polynomially.
pub fn det(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(bareiss(a.to_rows()))
}

pub(crate) fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn worked_example_is_162() {
        let a = IntMatrix::from_rows(&[[3, 0, 0], [0, 6, 1], [0, 0, 9]]).unwrap();
        assert_eq!(det(&a).unwrap(), BigInt::from(162));
    }

    #[test]
    fn upper_triangular_is_diagonal_product() {
        let a = IntMatrix::from_rows(&[[2, 7, -1, 4], [0, -3, 5, 5], [0, 0, 11, 8], [0, 0, 0, 6]]).unwrap();
        assert_eq!(det(&a).unwrap(), BigInt::from(2 * -3 * 11 * 6));
    }

    #[test]
    fn needs_row_swap_and_singular() {
        let a = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(det(&a).unwrap(), BigInt::from(-1));
        let s = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6], [0, 1, 1]]).unwrap();
        assert_eq!(det(&s).unwrap(), BigInt::zero());
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
    }

    #[test]
    fn rejects_non_square() {
        assert_eq!(det(&IntMatrix::zeros(2, 3)), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn matches_cofactor_expansion_on_5x5() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let rows: Vec<Vec<i64>> = (0..5)
                .map(|_| (0..5).map(|_| rng.random_range(-9..=9)).collect())
                .collect();
            let a = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(det(&a).unwrap(), BigInt::from(cofactor(&rows)), "{rows:?}");
        }
    }
}
