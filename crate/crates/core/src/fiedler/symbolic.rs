//! Polynomial-mode cosine matrices in the indeterminates `s`, `t`, `u`, with `g` standing
//! for the golden ratio (reduced by `g^2 = g + 1`) and `x` for the eigenvalue variable.

use num_traits::{Signed, Zero};

use super::unit_combinations;
use crate::algebra::{int, mpoly_determinant, MPoly, Rational};
use crate::error::Result;

pub const VARS: [&str; 5] = ["s", "t", "u", "g", "x"];

pub type SymMatrix = Vec<Vec<MPoly>>;

pub fn var(name: &str) -> MPoly {
    MPoly::var(&VARS, name)
}

pub fn constant(c: Rational) -> MPoly {
    MPoly::constant(&VARS, c)
}

pub fn integer(n: i64) -> MPoly {
    constant(int(n))
}

/// `1/g = g - 1`.
pub fn inv_golden() -> MPoly {
    var("g").sub(&integer(1))
}

/// `1/g^2 = 2 - g`.
pub fn inv_golden_sq() -> MPoly {
    integer(2).sub(&var("g"))
}

/// Symmetric matrix with diagonal `-1` from its strictly upper triangle.
pub fn from_upper(n: usize, upper: &[MPoly]) -> SymMatrix {
    let mut m = vec![vec![integer(-1); n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[i][j] = upper[k].clone();
            m[j][i] = upper[k].clone();
            k += 1;
        }
    }
    m
}

/// One angle (`t`) at the edges of a vertex triangle, the other (`s`) on the tripod.
pub fn tripod_matrix() -> SymMatrix {
    let (s, t) = (var("s"), var("t"));
    from_upper(4, &[t.clone(), t.clone(), t, s.clone(), s.clone(), s])
}

/// Two angles on disjoint edge paths.
pub fn path_matrix() -> SymMatrix {
    let (s, t) = (var("s"), var("t"));
    from_upper(4, &[t.clone(), s.clone(), s.clone(), t.clone(), s, t])
}

/// Angles that are multiples of a common angle, with free cosine `u`.
pub fn multiples_matrix() -> SymMatrix {
    let (t, u) = (var("t"), var("u"));
    from_upper(4, &[t.neg(), t.clone(), t.clone(), u, t.clone(), t.neg()])
}

/// Path configuration with supplementary angles, cosines `t` and `-t`.
pub fn complement_matrix() -> SymMatrix {
    let t = var("t");
    from_upper(4, &[t.clone(), t.neg(), t.neg(), t.clone(), t.neg(), t])
}

/// `-(s^2 + t^2 + st + s + t - 1)(s - t/g^2 + 1/g)(t - s/g^2 + 1/g)`.
pub fn path_det_factored() -> MPoly {
    let (s, t) = (var("s"), var("t"));
    let quad = s.pow(2).add(&t.pow(2)).add(&s.mul(&t)).add(&s).add(&t).sub(&integer(1));
    let f1 = s.sub(&t.mul(&inv_golden_sq())).add(&inv_golden());
    let f2 = t.sub(&s.mul(&inv_golden_sq())).add(&inv_golden());
    quad.mul(&f1).mul(&f2).neg()
}

/// The factored determinant with denominators cleared:
/// `-(s^2 + t^2 + st + s + t - 1)(g^2 s - t + g)(g^2 t - s + g)`, equal to `g^2 det A`.
pub fn path_det_cleared() -> MPoly {
    let (s, t, g) = (var("s"), var("t"), var("g"));
    let g2 = g.pow(2);
    let quad = s.pow(2).add(&t.pow(2)).add(&s.mul(&t)).add(&s).add(&t).sub(&integer(1));
    let f1 = g2.mul(&s).sub(&t).add(&g);
    let f2 = g2.mul(&t).sub(&s).add(&g);
    quad.mul(&f1).mul(&f2).neg()
}

/// `(1 + s)^2 (1 - 2s - 3t^2)`.
pub fn tripod_det_factored() -> MPoly {
    let (s, t) = (var("s"), var("t"));
    integer(1).add(&s).pow(2).mul(&integer(1).sub(&s.scale(&int(2))).sub(&t.pow(2).scale(&int(3))))
}

/// `-g s + t/g - 1`.
pub fn lambda1() -> MPoly {
    var("g").mul(&var("s")).neg().add(&var("t").mul(&inv_golden())).sub(&integer(1))
}

pub fn reduce(p: &MPoly) -> Result<MPoly> {
    p.reduce_golden("g")
}

pub fn det(m: &[Vec<MPoly>]) -> Result<MPoly> {
    reduce(&mpoly_determinant(m)?)
}

/// `det(x I - A)`.
pub fn char_poly(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let x = var("x");
    let shifted: SymMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, a)| if i == j { x.sub(a) } else { a.neg() }).collect())
        .collect();
    det(&shifted)
}

/// Whether `a - b` reduces to zero modulo `g^2 = g + 1`.
pub fn identity_holds(a: &MPoly, b: &MPoly) -> Result<bool> {
    Ok(reduce(&a.sub(b))?.is_zero())
}

/// Whether `value` is a root of the polynomial in `x`.
pub fn is_root(p: &MPoly, value: &MPoly) -> Result<bool> {
    Ok(reduce(&p.substitute("x", value)?)?.is_zero())
}

pub fn row_combination(m: &[Vec<MPoly>], c: &[i64]) -> Vec<MPoly> {
    let n = m.len();
    (0..n)
        .map(|j| {
            (0..n).filter(|&i| c[i] != 0).fold(integer(0), |acc, i| acc.add(&m[i][j].scale(&int(c[i]))))
        })
        .collect()
}

pub fn substitute_all(v: &[MPoly], values: &[(&str, Rational)]) -> Result<Vec<MPoly>> {
    v.iter()
        .map(|p| {
            let mut q = p.clone();
            for (name, r) in values {
                q = q.substitute_rational(name, r)?;
            }
            Ok(q)
        })
        .collect()
}

/// A `{-1, 0, 1}` row combination whose nonzero entries are positive multiples of one
/// polynomial `g` not involving the `free` symbols. The combination is then
/// sign-definite wherever `g` has a fixed sign.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicCertificate {
    pub coefficients: Vec<i64>,
    pub combination: Vec<MPoly>,
    pub common: MPoly,
}

pub fn rowspace_certificate(m: &[Vec<MPoly>], free: &[&str]) -> Result<Option<SymbolicCertificate>> {
    for c in unit_combinations(m.len()) {
        let combo = row_combination(m, &c);
        if let Some(common) = common_factor(&combo, free)? {
            return Ok(Some(SymbolicCertificate { coefficients: c, combination: combo, common }));
        }
    }
    Ok(None)
}

/// The polynomial all nonzero entries are positive rational multiples of, normalised
/// to the first nonzero entry.
fn common_factor(v: &[MPoly], free: &[&str]) -> Result<Option<MPoly>> {
    let mut base: Option<MPoly> = None;
    for p in v {
        if p.is_zero() {
            continue;
        }
        for name in free {
            if p.degree_in(name)? > 0 {
                return Ok(None);
            }
        }
        match &base {
            None => base = Some(p.clone()),
            Some(b) => {
                if positive_ratio(p, b).is_none() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(base.filter(|b| b.terms().values().any(|c| !c.is_zero()) && !is_constant(b)))
}

fn is_constant(p: &MPoly) -> bool {
    p.terms().keys().all(|m| m.iter().all(|&e| e == 0))
}

/// `r > 0` with `p = r q`, if any.
pub fn positive_ratio(p: &MPoly, q: &MPoly) -> Option<Rational> {
    let (mp, cp) = p.terms().iter().next()?;
    let cq = q.terms().get(mp)?;
    let r = cp / cq;
    if !r.is_positive() || r.is_zero() {
        return None;
    }
    (q.scale(&r) == *p).then_some(r)
}

/// Exact value of a polynomial in `t` only at a rational point.
pub fn eval_t(p: &MPoly, t: &Rational) -> Result<Rational> {
    p.eval(&[("t", t.clone())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn tripod_determinant() {
        assert!(identity_holds(&det(&tripod_matrix()).unwrap(), &tripod_det_factored()).unwrap());
        let mut bad = tripod_matrix();
        bad[0][1] = bad[0][1].neg();
        bad[1][0] = bad[1][0].neg();
        assert!(!identity_holds(&det(&bad).unwrap(), &tripod_det_factored()).unwrap());
    }

    #[test]
    fn path_determinant_and_eigenvalue() {
        let m = path_matrix();
        let d = det(&m).unwrap();
        let g2 = var("g").pow(2);
        assert!(identity_holds(&d.mul(&g2), &path_det_cleared()).unwrap());
        // the uncleared product is det A / g^2
        assert!(identity_holds(&d, &path_det_factored().mul(&g2)).unwrap());
        assert!(!identity_holds(&d, &path_det_factored()).unwrap());
        assert!(is_root(&char_poly(&m).unwrap(), &lambda1()).unwrap());
        assert!(!is_root(&char_poly(&tripod_matrix()).unwrap(), &lambda1()).unwrap());
        // at t = 0 the determinant is 1 - 3s^2 + s^4
        let d0 = det(&m).unwrap().substitute_rational("t", &rat(0, 1)).unwrap();
        let s = var("s");
        assert!(identity_holds(&d0, &integer(1).sub(&s.pow(2).scale(&int(3))).add(&s.pow(4))).unwrap());
    }

    #[test]
    fn certificates_are_independent_of_u() {
        let c = rowspace_certificate(&multiples_matrix(), &["u"]).unwrap().unwrap();
        assert_eq!(c.coefficients, vec![1, 0, 0, 1]);
        assert!(identity_holds(&c.common, &var("t").sub(&integer(1))).unwrap());
        // first and last rows give -(1 + t)(1, 0, 0, 1)
        let c = rowspace_certificate(&complement_matrix(), &["u"]).unwrap().unwrap();
        assert_eq!(c.coefficients, vec![1, 0, 0, 1]);
        assert!(identity_holds(&c.common, &var("t").add(&integer(1)).neg()).unwrap());
        let middle = row_combination(&complement_matrix(), &[0, 1, 1, 0]);
        assert!(identity_holds(&middle[2], &var("t").sub(&integer(1))).unwrap());
        let at = substitute_all(&middle, &[("t", rat(2, 3))]).unwrap();
        assert_eq!(at[1], constant(rat(-1, 3)));
        assert!(rowspace_certificate(&tripod_matrix(), &["u"]).unwrap().is_none());
    }
}
