//! Smith normal form of small integer matrices.
//!
//! Classical pivot-and-reduce elimination with Euclidean descent: every swap
//! strictly shrinks the pivot, so termination is immediate. Sizes here are
//! tiny (lattice ranks of the built-in models), so no effort is spent on
//! coefficient growth.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix, nonnegative,
/// as many entries as `min(rows, cols)`. Trailing zeros mean rank deficit.
pub fn smith_normal_form(mat: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    if let Some(bad) = mat.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(bad.len(), cols));
    }
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let n = rows.min(cols);

    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing submatrix becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }

        loop {
            let mut clean = true;
            for i in (t + 1)..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                for j in t..cols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for i in t..rows {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide everything that remains, or the invariant
            // factor chain breaks; fold an offending row in and redo
            let mut fixed = true;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if (&a[i][j] % &a[t][t]).is_zero() {
                        continue;
                    }
                    for jj in t..cols {
                        let v = a[i][jj].clone();
                        a[t][jj] += v;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
            if fixed {
                break;
            }
        }
        t += 1;
    }

    Ok((0..n).map(|i| a[i][i].abs()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn diagonal_inputs() {
        assert_eq!(
            smith_normal_form(&m(&[&[2, 0], &[0, 4]])).unwrap(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        // coprime diagonal merges into the last factor
        assert_eq!(
            smith_normal_form(&m(&[&[2, 0], &[0, 3]])).unwrap(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn textbook_3x3() {
        let d = smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).unwrap();
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(
            smith_normal_form(&m(&[&[1, 0], &[0, 1]])).unwrap(),
            vec![BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(
            smith_normal_form(&m(&[&[0, 0], &[0, 0]])).unwrap(),
            vec![BigInt::from(0), BigInt::from(0)]
        );
    }

    #[test]
    fn rank_deficient() {
        let d = smith_normal_form(&m(&[&[1, 2], &[2, 4]])).unwrap();
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn product_of_factors_is_abs_det() {
        // A = 2*[[2,3],[1,2]] - I
        let d = smith_normal_form(&m(&[&[3, 6], &[2, 3]])).unwrap();
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn invariant_factors_divide_in_order() {
        let d = smith_normal_form(&m(&[&[6, 4, 2], &[4, 6, 8], &[2, 8, 10]])).unwrap();
        for w in d.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }
}
