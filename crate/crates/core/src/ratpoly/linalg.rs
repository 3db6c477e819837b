//! Exact linear algebra: fraction-free rank and reduced row-echelon form.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::rat::{self, Rational};

/// Dimension of the span of `rows`, by fraction-free (Bareiss) elimination
/// on the denominator-cleared integer matrix.
pub fn rank(rows: &[Vec<Rational>]) -> Result<usize, Error> {
    if rows.is_empty() {
        return Ok(0);
    }
    let ncols = rows[0].len();
    for r in rows {
        if r.len() != ncols {
            return Err(Error::DimensionMismatch { expected: ncols, got: r.len() });
        }
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = rat::denom_lcm(r);
            r.iter().map(|x| x.numer() * (&l / x.denom().abs())).collect()
        })
        .collect();

    let nrows = m.len();
    let mut rank = 0usize;
    let mut prev_pivot = BigInt::from(1);
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank][col].clone();
        for i in rank + 1..nrows {
            for j in 0..ncols {
                if j == col {
                    continue;
                }
                let v = &pivot * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = &v / &prev_pivot;
            }
            m[i][col] = BigInt::zero();
        }
        prev_pivot = pivot;
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    Ok(rank)
}

/// In-place reduced row-echelon form with lexicographic pivot order
/// (leftmost nonzero column first), pivots normalized to 1 and zero rows
/// dropped. Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        let Some(piv) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, piv);
        let p = rows[row][col].clone();
        for x in rows[row].iter_mut() {
            *x = &*x / &p;
        }
        for i in 0..rows.len() {
            if i == row || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in 0..ncols {
                let sub = &f * &rows[row][j];
                rows[i][j] = &rows[i][j] - &sub;
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rows.truncate(row);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};
    use alloc::vec;

    #[test]
    fn rank_examples() {
        // empty span
        assert_eq!(rank(&[]).unwrap(), 0);
        // plane spanned
        let rows = vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ];
        assert_eq!(rank(&rows).unwrap(), 2);
        // normals of {x1=0, x2=0, x1-x2=0} in R^2
        let rows = vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(-1)],
        ];
        assert_eq!(rank(&rows).unwrap(), 2);
    }

    #[test]
    fn rank_handles_fractions() {
        let rows = vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(3, 2), int(1)],
        ];
        assert_eq!(rank(&rows).unwrap(), 1);
    }

    #[test]
    fn rank_rejects_ragged() {
        let rows = vec![vec![int(1)], vec![int(1), int(2)]];
        assert!(matches!(rank(&rows), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rref_normalizes() {
        let mut rows = vec![
            vec![int(2), int(2), int(4)],
            vec![int(1), int(1), int(2)],
            vec![int(0), int(3), int(3)],
        ];
        let pivots = rref(&mut rows);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rows, vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]]);
    }
}
