//! Exact interior-disjointness of simplices given by rational vertices in any affine chart.

use num_traits::{One, Signed, Zero};

use crate::algebra::{inverse, Rational};
use crate::error::Result;
use crate::fiedler::feasible_point;

/// Affine function `x -> grad . x + constant`.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    pub grad: Vec<Rational>,
    pub constant: Rational,
}

impl Affine {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.grad.iter().zip(x).fold(self.constant.clone(), |acc, (g, v)| acc + g * v)
    }
}

/// Barycentric coordinate functions of a simplex; `lambda_i` vanishes on facet `i`.
pub fn barycentric_functions(v: &[Vec<Rational>]) -> Result<Vec<Affine>> {
    let d = v.len() - 1;
    let edges: Vec<Vec<Rational>> = (0..d).map(|r| (1..=d).map(|c| &v[c][r] - &v[0][r]).collect()).collect();
    let inv = inverse(&edges)?;
    let mut out = Vec::with_capacity(d + 1);
    let mut grad0 = vec![Rational::zero(); d];
    let mut const0 = Rational::one();
    for row in &inv {
        let c = -row.iter().zip(&v[0]).fold(Rational::zero(), |acc, (g, x)| acc + g * x);
        for (a, g) in grad0.iter_mut().zip(row) {
            *a -= g;
        }
        const0 -= &c;
        out.push(Affine { grad: row.clone(), constant: c });
    }
    out.insert(0, Affine { grad: grad0, constant: const0 });
    Ok(out)
}

/// Nonnegative multipliers `y`, `z` (not all zero) with `sum y_i lambda^P_i + sum z_j lambda^Q_j`
/// constant and `<= 0`. Such a combination cannot be positive on both interiors.
#[derive(Clone, Debug, PartialEq)]
pub struct Separation {
    pub first: Vec<Rational>,
    pub second: Vec<Rational>,
}

/// A separation certificate when the interiors of `p` and `q` are disjoint.
pub fn separate(p: &[Vec<Rational>], q: &[Vec<Rational>]) -> Result<Option<Separation>> {
    let fp = barycentric_functions(p)?;
    let fq = barycentric_functions(q)?;
    let n = p.len();
    // a facet plane of one simplex with the other on its far side
    for (i, f) in fp.iter().enumerate() {
        let vals: Vec<Rational> = q.iter().map(|x| f.eval(x)).collect();
        if vals.iter().all(|v| !v.is_positive()) {
            let mut first = vec![Rational::zero(); n];
            first[i] = Rational::one();
            return Ok(Some(Separation { first, second: vals.into_iter().map(|v| -v).collect() }));
        }
    }
    for (j, f) in fq.iter().enumerate() {
        let vals: Vec<Rational> = p.iter().map(|x| f.eval(x)).collect();
        if vals.iter().all(|v| !v.is_positive()) {
            let mut second = vec![Rational::zero(); n];
            second[j] = Rational::one();
            return Ok(Some(Separation { first: vals.into_iter().map(|v| -v).collect(), second }));
        }
    }
    let d = n - 1;
    let width = 2 * n + 1;
    let mut rows = Vec::with_capacity(d + 2);
    for k in 0..d {
        let mut row = vec![Rational::zero(); width];
        for i in 0..n {
            row[i] = fp[i].grad[k].clone();
            row[n + i] = fq[i].grad[k].clone();
        }
        rows.push(row);
    }
    let mut cons = vec![Rational::zero(); width];
    for i in 0..n {
        cons[i] = fp[i].constant.clone();
        cons[n + i] = fq[i].constant.clone();
    }
    cons[2 * n] = Rational::one();
    rows.push(cons);
    let mut norm = vec![Rational::one(); width];
    norm[2 * n] = Rational::zero();
    rows.push(norm);
    let mut rhs = vec![Rational::zero(); d + 1];
    rhs.push(Rational::one());
    Ok(feasible_point(&rows, &rhs).map(|x| Separation { first: x[..n].to_vec(), second: x[n..2 * n].to_vec() }))
}

/// Re-checks a separation certificate from the vertices alone.
pub fn verify_separation(p: &[Vec<Rational>], q: &[Vec<Rational>], s: &Separation) -> Result<bool> {
    let fp = barycentric_functions(p)?;
    let fq = barycentric_functions(q)?;
    let mult = s.first.iter().chain(&s.second);
    if mult.clone().any(|m| m.is_negative()) || mult.clone().all(|m| m.is_zero()) {
        return Ok(false);
    }
    let d = p.len() - 1;
    let mut grad = vec![Rational::zero(); d];
    let mut constant = Rational::zero();
    for (m, f) in s.first.iter().zip(&fp).chain(s.second.iter().zip(&fq)) {
        for (g, x) in grad.iter_mut().zip(&f.grad) {
            *g += m * x;
        }
        constant += m * &f.constant;
    }
    Ok(grad.iter().all(Zero::is_zero) && !constant.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn barycentric_sums_to_one() {
        let p = pts(&[&[0, 0], &[2, 0], &[0, 2]]);
        let f = barycentric_functions(&p).unwrap();
        let x = vec![rat(1, 2), rat(1, 2)];
        let total: Rational = f.iter().map(|a| a.eval(&x)).sum();
        assert_eq!(total, int(1));
        assert_eq!(f[0].eval(&x), rat(1, 2));
    }

    #[test]
    fn separation_cases() {
        let a = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        let b = pts(&[&[1, 0], &[0, 1], &[1, 1]]);
        let s = separate(&a, &b).unwrap().unwrap();
        assert!(verify_separation(&a, &b, &s).unwrap());
        let c = pts(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert!(separate(&a, &c).unwrap().is_none());
        // touching at a vertex only, not separated by any facet line
        let p = pts(&[&[0, 0], &[2, 1], &[1, 2]]);
        let q = pts(&[&[0, 0], &[-2, -1], &[-1, -2]]);
        let s = separate(&p, &q).unwrap().unwrap();
        assert!(verify_separation(&p, &q, &s).unwrap());
        let bogus = Separation { first: vec![int(1), int(0), int(0)], second: vec![int(0); 3] };
        assert!(!verify_separation(&a, &c, &bogus).unwrap());
    }
}
