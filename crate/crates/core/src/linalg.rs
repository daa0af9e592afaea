//! Small dense linear algebra over the rationals and over polynomial entries.

use num_traits::{One, Zero};

use crate::coeffring::{Poly, Q};

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `m x = b` for square invertible `m`.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let inv = invert(m)?;
    Some(
        inv.iter()
            .map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum())
            .collect(),
    )
}

pub type PolyMatrix = Vec<Vec<Poly>>;

pub fn poly_identity(n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect())
        .collect()
}

pub fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Poly::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j].add_product(&a[i][l], &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn poly_mat_vec(a: &PolyMatrix, v: &[Poly]) -> Vec<Poly> {
    a.iter()
        .map(|row| {
            let mut acc = Poly::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc.add_product(x, y);
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::q_int;

    #[test]
    fn invert_small() {
        let m = vec![vec![q_int(2), q_int(1)], vec![q_int(1), q_int(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![q_int(1), q_int(-1)], vec![q_int(-1), q_int(2)]]);
        let singular = vec![vec![q_int(1), q_int(2)], vec![q_int(2), q_int(4)]];
        assert!(invert(&singular).is_none());
        assert_eq!(solve(&m, &[q_int(3), q_int(2)]).unwrap(), vec![q_int(1), q_int(1)]);
    }
}
