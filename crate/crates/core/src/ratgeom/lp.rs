//! Exact phase-one simplex for cone membership.

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Whether `target` is a non-negative combination of `generators`.
///
/// Solves the phase-one problem `min Σ a_i` subject to `G λ + a = target`,
/// `λ, a ≥ 0` in exact arithmetic with Bland's rule, so it always terminates.
pub fn in_cone(generators: &[Vec<Rational>], target: &[Rational]) -> bool {
    let rows = target.len();
    let gens = generators.len();
    let cols = gens + rows;
    // tableau rows: [λ (gens) | artificial (rows) | rhs]
    let mut t: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let flip = target[i].is_negative();
            let mut row = Vec::with_capacity(cols + 1);
            for g in generators {
                row.push(if flip { -g[i].clone() } else { g[i].clone() });
            }
            for k in 0..rows {
                row.push(if k == i { Rational::one() } else { Rational::zero() });
            }
            row.push(target[i].abs());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (gens..cols).collect();

    // reduced costs of the phase-one objective; last entry is minus its value
    let mut obj = vec![Rational::zero(); cols + 1];
    for row in &t {
        for j in 0..gens {
            obj[j] -= &row[j];
        }
        obj[cols] -= &row[cols];
    }

    while let Some(enter) = (0..cols).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a pivot row always exists
        let (r, _) = leave.expect("phase-one objective is bounded");
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[r] = enter;
    }
    obj[cols].is_zero()
}
