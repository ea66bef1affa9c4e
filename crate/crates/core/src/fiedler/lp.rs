//! Exact Phase-1 simplex method over the rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

/// A point `x >= 0` with `a x = b`, or `None` when the system is infeasible.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // tableau rows: [A | I | b] with b made nonnegative
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -&a[i][j] } else { a[i][j].clone() };
        }
        row[n + i] = Rational::one();
        row[width - 1] = if flip { -&b[i] } else { b[i].clone() };
        t.push(row);
    }
    // objective: minimise the sum of artificials, stored as reduced costs
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let z = &t[m];
        // Bland: smallest index with negative reduced cost
        let Some(enter) = (0..n + m).find(|&j| z[j].is_negative()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        basis[r] = enter;
    }
    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
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
    use crate::algebra::{int, rat};

    #[test]
    fn finds_feasible_points() {
        // x + y = 1, x - y = 1/2
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let x = feasible_point(&a, &[int(1), rat(1, 2)]).unwrap();
        assert_eq!(x, vec![rat(3, 4), rat(1, 4)]);
        // x + y = -1 has no nonnegative solution
        assert!(feasible_point(&[vec![int(1), int(1)]], &[int(-1)]).is_none());
        // degenerate but feasible
        let a = vec![vec![int(1), int(-1), int(0)], vec![int(0), int(1), int(-1)], vec![int(1), int(1), int(1)]];
        let x = feasible_point(&a, &[int(0), int(0), int(3)]).unwrap();
        assert_eq!(x, vec![int(1), int(1), int(1)]);
    }
}
