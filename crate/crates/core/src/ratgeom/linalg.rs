//! Small dense exact linear algebra.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Reduce `m` to row echelon form in place; returns the pivot columns.
fn row_echelon(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_echelon(&mut m).len()
}

/// Solve the square system `a x = b`; `None` if `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_echelon(&mut m);
    if pivots.len() < n || pivots.last().is_some_and(|&c| c >= n) {
        return None;
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `(det, adj)` with `m · adj = det · I`. For singular input `adj` is `None`.
pub fn adjugate_int(m: &[Vec<BigInt>]) -> (BigInt, Option<Vec<Vec<BigInt>>>) {
    let det = det_int(m);
    if det.is_zero() {
        return (det, None);
    }
    let n = m.len();
    let rat: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|e| Rational::from_integer(e.clone())).collect())
        .collect();
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        let col = solve(&rat, &e).expect("non-singular");
        for (i, x) in col.into_iter().enumerate() {
            let scaled = x * Rational::from_integer(det.clone());
            debug_assert!(scaled.is_integer());
            adj[i][j] = scaled.to_integer();
        }
    }
    (det, Some(adj))
}

/// Integer inverse of a matrix with determinant ±1.
pub fn inverse_unimodular(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let (det, adj) = adjugate_int(m);
    if det.abs() != BigInt::one() {
        return None;
    }
    let adj = adj?;
    Some(
        adj.into_iter()
            .map(|r| r.into_iter().map(|e| e * &det).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    fn rats(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        ints(rows)
            .into_iter()
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det_int(&ints(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(det_int(&ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            det_int(&ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])),
            BigInt::from(6)
        );
        assert_eq!(det_int(&ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(
            det_int(&ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])),
            BigInt::from(-1)
        );
    }

    #[test]
    fn adjugate_identity() {
        let m = ints(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let (det, adj) = adjugate_int(&m);
        let adj = adj.unwrap();
        for (i, row) in m.iter().enumerate() {
            for j in 0..3 {
                let s: BigInt = row.iter().zip(&adj).map(|(x, a)| x * &a[j]).sum();
                let expect = if i == j { det.clone() } else { BigInt::zero() };
                assert_eq!(s, expect);
            }
        }
    }

    #[test]
    fn unimodular_inverse() {
        let m = ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(inverse_unimodular(&m).unwrap(), ints(&[&[1, -1], &[0, 1]]));
        assert!(inverse_unimodular(&ints(&[&[2, 0], &[0, 1]])).is_none());
    }

    #[test]
    fn solve_and_rank() {
        let a = rats(&[&[0, -1], &[1, 1]]);
        let b = vec![Rational::zero(), Rational::one()];
        assert_eq!(solve(&a, &b).unwrap(), vec![Rational::one(), Rational::zero()]);
        assert!(solve(&rats(&[&[1, 1], &[2, 2]]), &b).is_none());
        assert_eq!(rank(&rats(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 0]])), 2);
        assert_eq!(rank(&[]), 0);
    }
}
