//! Phase-one simplex over the rationals with Bland's rule.

use crate::exactnum::Rat;

/// A point `x ≥ 0` with `A x = b`, or `None` if there is none.
/// Requires `b ≥ 0` componentwise.
pub fn feasible_point(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    assert!(b.iter().all(|x| !x.is_negative()), "phase one needs b >= 0");
    // Columns: n structural, m artificial, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row = vec![Rat::zero(); width];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = Rat::one();
            row[width - 1] = b[i].clone();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of "minimise the sum of artificials".
    let mut cost = vec![Rat::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (r, _) = leave.expect("bounded phase-one objective");
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &piv;
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
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * p;
        }
        basis[r] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::int(x)).collect()
    }

    #[test]
    fn finds_a_point_when_feasible() {
        let a = vec![r(&[1, 1, 0]), r(&[0, 1, 1])];
        let b = r(&[2, 3]);
        let x = feasible_point(&a, &b).unwrap();
        for (row, bi) in a.iter().zip(&b) {
            let s: Rat = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            assert_eq!(&s, bi);
        }
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = 1 and x + y = 2
        let a = vec![r(&[1, 1]), r(&[1, 1])];
        assert!(feasible_point(&a, &r(&[1, 2])).is_none());
    }
}
