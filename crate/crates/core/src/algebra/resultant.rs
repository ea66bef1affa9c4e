use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{perfect_square_root, AlgebraicReal, IntPolynomial, Interval, Rational};
use crate::error::{Error, Result};

/// Polynomial in `y` whose coefficients are integer polynomials in `z`;
/// `coeffs[i]` multiplies `y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<IntPolynomial>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<IntPolynomial>) -> Self {
        while coeffs.last().is_some_and(IntPolynomial::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    /// Embeds a polynomial in `y` with constant coefficients.
    pub fn from_y(p: &IntPolynomial) -> Self {
        BiPoly::new(p.coeffs().iter().map(|c| IntPolynomial::constant(c.clone())).collect())
    }

    /// Embeds a polynomial in `z` as a constant in `y`.
    pub fn from_z(p: &IntPolynomial) -> Self {
        BiPoly::new(vec![p.clone()])
    }

    /// Builds from `(i, j, c)` triples meaning `c y^i z^j`.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let ny = terms.iter().map(|t| t.0).max().map_or(0, |m| m + 1);
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); ny];
        for &(i, j, c) in terms {
            if rows[i].len() <= j {
                rows[i].resize(j + 1, BigInt::zero());
            }
            rows[i][j] += c;
        }
        BiPoly::new(rows.into_iter().map(IntPolynomial::new).collect())
    }

    pub fn coeffs(&self) -> &[IntPolynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn degree_z(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).map(IntPolynomial::deg).max().unwrap_or(0)
    }

    /// Pseudo-remainder in `y` modulo `m(y)`: the result equals `lc(m)^e p` modulo `m`
    /// and has `y`-degree below `deg m`.
    pub fn reduce_y(&self, m: &IntPolynomial) -> BiPoly {
        let n = m.deg();
        let lc = IntPolynomial::constant(m.leading());
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > n {
            let k = coeffs.len() - 1;
            let lead = coeffs.pop().unwrap();
            for c in coeffs.iter_mut() {
                *c = &lc * c;
            }
            for (i, mi) in m.coeffs().iter().enumerate().take(n) {
                let term = lead.scale(mi);
                coeffs[k - n + i] = &coeffs[k - n + i] - &term;
            }
            while coeffs.last().is_some_and(IntPolynomial::is_zero) {
                coeffs.pop();
            }
        }
        BiPoly::new(coeffs)
    }

    /// Specializes `z = z0`, giving a polynomial in `y`.
    pub fn eval_z(&self, z0: &Rational) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.eval(z0)).collect()
    }

    /// Specializes `y = y0`, giving a polynomial in `z`.
    pub fn eval_y(&self, y0: &Rational) -> IntPolynomial {
        let mut acc: Vec<Rational> = Vec::new();
        let mut pow = Rational::one();
        for c in &self.coeffs {
            for (k, ck) in c.coeffs().iter().enumerate() {
                if acc.len() <= k {
                    acc.resize(k + 1, Rational::zero());
                }
                acc[k] += &pow * Rational::from_integer(ck.clone());
            }
            pow *= y0;
        }
        IntPolynomial::from_rationals(&acc)
    }

    /// Interval enclosure at `(y, z)`.
    pub fn eval_interval(&self, y: &Interval, z: &Interval) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * y) + &c.eval_interval(z);
        }
        acc
    }

    /// `q(z - y)` for a polynomial `q`.
    pub fn shifted_difference(q: &IntPolynomial) -> Self {
        // (z - y)^i expanded by the binomial theorem
        let n = q.deg();
        let mut rows = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for (i, qi) in q.coeffs().iter().enumerate() {
            let mut binom = BigInt::one();
            for k in 0..=i {
                // term C(i,k) z^(i-k) (-y)^k
                let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                rows[k][i - k] += qi * &binom * sign;
                binom = binom * BigInt::from(i - k) / BigInt::from(k + 1);
            }
        }
        BiPoly::new(rows.into_iter().map(IntPolynomial::new).collect())
    }

    /// `p(z + y)`.
    pub fn shifted_sum(p: &IntPolynomial) -> Self {
        let n = p.deg();
        let mut rows = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for (i, pi) in p.coeffs().iter().enumerate() {
            let mut binom = BigInt::one();
            for k in 0..=i {
                rows[k][i - k] += pi * &binom;
                binom = binom * BigInt::from(i - k) / BigInt::from(k + 1);
            }
        }
        BiPoly::new(rows.into_iter().map(IntPolynomial::new).collect())
    }

    /// Homogenized `y^n p(z / y) = sum a_i z^i y^(n-i)`.
    pub fn homogenized(p: &IntPolynomial) -> Self {
        let n = p.deg();
        let mut rows = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for (i, ai) in p.coeffs().iter().enumerate() {
            rows[n - i][i] += ai;
        }
        BiPoly::new(rows.into_iter().map(IntPolynomial::new).collect())
    }

    /// `p(z y)`.
    pub fn product_argument(p: &IntPolynomial) -> Self {
        BiPoly::new(p.coeffs().iter().enumerate().map(|(i, ai)| IntPolynomial::monomial(ai.clone(), i)).collect())
    }
}

/// Fraction-free determinant of an integer matrix.
pub(crate) fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Resultant with respect to `y`, as a polynomial in `z`. Computed by evaluating the
/// formal Sylvester matrix at integer points and interpolating.
pub fn resultant_in_y(f: &BiPoly, g: &BiPoly) -> Result<IntPolynomial> {
    if f.is_zero() || g.is_zero() {
        return Ok(IntPolynomial::zero());
    }
    let (m, n) = (f.degree_y(), g.degree_y());
    let size = m + n;
    if size == 0 {
        return Ok(IntPolynomial::constant(BigInt::one()));
    }
    let zero = IntPolynomial::zero();
    let mut sylvester = vec![vec![zero; size]; size];
    for r in 0..n {
        for (i, fi) in f.coeffs.iter().enumerate() {
            sylvester[r][r + m - i] = fi.clone();
        }
    }
    for r in 0..m {
        for (j, gj) in g.coeffs.iter().enumerate() {
            sylvester[n + r][r + n - j] = gj.clone();
        }
    }
    let bound: usize = sylvester
        .iter()
        .map(|row| row.iter().filter(|e| !e.is_zero()).map(IntPolynomial::deg).max().unwrap_or(0))
        .sum();
    let points: Vec<BigInt> = (0..=bound as i64).map(BigInt::from).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|z| bareiss(sylvester.iter().map(|row| row.iter().map(|e| e.eval_int(z)).collect()).collect()))
        .collect();
    Ok(interpolate(&points, &values))
}

/// Newton interpolation through integer data; the result has integer coefficients
/// whenever the data come from one.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPolynomial {
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.iter().map(|y| Rational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            dd[i] = num / Rational::from_integer(&xs[i] - &xs[i - level]);
        }
    }
    // expand sum dd[i] prod_{j<i} (z - x_j)
    let mut coeffs = vec![Rational::zero(); n];
    let mut basis = vec![Rational::one()];
    for (i, c) in dd.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += c * b;
        }
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += b;
            next[k] -= b * Rational::from_integer(xs[i].clone());
        }
        basis = next;
    }
    let denom_one = coeffs.iter().all(|c| c.is_integer());
    debug_assert!(denom_one, "interpolated resultant has non-integer coefficients");
    IntPolynomial::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

/// Eliminates `y` from `p(y, z)` at an algebraic `y = t`: the returned polynomial in `z`
/// vanishes at every root of `p(t, z)`, and also at the roots for the conjugates of `t`.
pub fn eliminate(p: &BiPoly, t: &AlgebraicReal) -> Result<IntPolynomial> {
    if let Some(r) = t.to_rational() {
        return Ok(p.eval_y(&r));
    }
    resultant_in_y(&BiPoly::from_y(t.minpoly()), p)
}

/// Polynomial in `z` whose coefficients lie in `Q(t)` for a real algebraic `t`, stored
/// as an integer polynomial in `(t, z)`.
#[derive(Clone, Debug)]
pub struct ExtPolynomial {
    pub poly: BiPoly,
    pub t: AlgebraicReal,
}

impl ExtPolynomial {
    pub fn new(poly: BiPoly, t: AlgebraicReal) -> Self {
        ExtPolynomial { poly, t }
    }

    /// Builds `sum c_k z^k` from coefficients that are all rational or all lie in one
    /// real quadratic field.
    pub fn from_coefficients(coeffs: &[AlgebraicReal]) -> Result<Self> {
        let mut radicand: Option<BigInt> = None;
        let mut parts: Vec<(Rational, Rational)> = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if let Some(r) = c.to_rational() {
                parts.push((r, Rational::zero()));
                continue;
            }
            let (a, b, d) = c
                .quadratic_parts()
                .ok_or_else(|| Error::InconsistentField(format!("coefficient {c} is neither rational nor quadratic")))?;
            let b = match &radicand {
                None => {
                    radicand = Some(d);
                    b
                }
                Some(d0) => {
                    let s = perfect_square_root(&(d0 * &d)).ok_or_else(|| {
                        Error::InconsistentField(format!("sqrt({d}) does not lie in Q(sqrt({d0}))"))
                    })?;
                    b * Rational::new(s, d0.clone())
                }
            };
            parts.push((a, b));
        }
        let t = match &radicand {
            Some(d) => AlgebraicReal::sqrt_rational(&Rational::from_integer(d.clone()))?,
            None => AlgebraicReal::zero(),
        };
        let lcm = parts.iter().fold(BigInt::one(), |acc, (a, b)| {
            let acc = acc.lcm(a.denom());
            acc.lcm(b.denom())
        });
        let scale = Rational::from_integer(lcm);
        let row = |f: &dyn Fn(&(Rational, Rational)) -> Rational| {
            IntPolynomial::new(parts.iter().map(|p| (f(p) * &scale).to_integer()).collect())
        };
        let poly = BiPoly::new(vec![row(&|p| p.0.clone()), row(&|p| p.1.clone())]);
        Ok(ExtPolynomial { poly, t })
    }

    /// Whether `p(y, z)` vanishes at `z` for every root `y` of the minimal polynomial of `t`.
    fn vanishes_for_all_conjugates(&self, z: &AlgebraicReal) -> bool {
        self.poly
            .reduce_y(self.t.minpoly())
            .coeffs()
            .iter()
            .all(|c| c.is_zero() || c.div_exact(z.minpoly()).is_some())
    }

    /// Distinct real roots in increasing order. Roots of the eliminant that belong to
    /// another conjugate of `t` are discarded; a root is accepted only when every
    /// other conjugate is real and provably gives a nonzero value.
    pub fn real_roots(&self) -> Result<Vec<AlgebraicReal>> {
        let eliminant = eliminate(&self.poly, &self.t)?;
        if eliminant.is_zero() {
            return Err(Error::UndefinedRootSet);
        }
        let candidates = AlgebraicReal::real_roots(&eliminant)?;
        if self.t.is_rational() {
            return Ok(candidates);
        }
        let conjugates = AlgebraicReal::real_roots(self.t.minpoly())?;
        if conjugates.len() != self.t.degree() {
            return Err(Error::Inconclusive("parameter has non-real conjugates".into()));
        }
        let mut out = Vec::new();
        for z in candidates {
            if self.vanishes_for_all_conjugates(&z) {
                out.push(z);
                continue;
            }
            let mut at_t = None;
            let mut others_nonzero = true;
            for c in &conjugates {
                let same = c == &self.t;
                let vanishes_excluded = self.excludes_zero(c, &z)?;
                if same {
                    at_t = Some(!vanishes_excluded);
                } else if !vanishes_excluded {
                    others_nonzero = false;
                }
            }
            match (at_t, others_nonzero) {
                (Some(false), _) => {}
                (Some(true), true) => out.push(z),
                _ => return Err(Error::Inconclusive("could not separate conjugate roots".into())),
            }
        }
        Ok(out)
    }

    /// Whether `p(t', z) != 0` can be shown by interval evaluation, refining both.
    fn excludes_zero(&self, t: &AlgebraicReal, z: &AlgebraicReal) -> Result<bool> {
        let mut width = Rational::new(1.into(), 1024.into());
        for _ in 0..8 {
            let v = self.poly.eval_interval(&t.enclosure(&width), &z.enclosure(&width));
            if !v.contains_zero() {
                return Ok(true);
            }
            width = &width * Rational::new(1.into(), 1024.into());
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn bareiss_matches_small_determinant() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)],
            vec![BigInt::from(0), BigInt::from(5), BigInt::from(-4)],
        ];
        // 2(-12 - 10) + 1(-4 - 0) = -48
        assert_eq!(bareiss(m), BigInt::from(-48));
    }

    #[test]
    fn resultant_of_square_roots_sum() {
        // roots of Res_y(y^2 - 2, (z - y)^2 - 3) are +-sqrt2 +- sqrt3: z^4 - 10z^2 + 1
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        let q = IntPolynomial::from_i64(&[-3, 0, 1]);
        let r = resultant_in_y(&BiPoly::from_y(&p), &BiPoly::shifted_difference(&q)).unwrap();
        assert_eq!(r.primitive_part(), IntPolynomial::from_i64(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn elimination_and_rational_specialization() {
        // y z - 1 at y = 1/2: z - 2 (up to scale)
        let p = BiPoly::from_terms(&[(1, 1, 1), (0, 0, -1)]);
        let t = AlgebraicReal::from_rational(rat(1, 2));
        let e = eliminate(&p, &t).unwrap();
        assert_eq!(e.primitive_part(), IntPolynomial::from_i64(&[-2, 1]));
    }

    #[test]
    fn conjugate_roots_are_filtered() {
        // z - t at t = sqrt2: eliminant z^2 - 2, only +sqrt2 belongs to t
        let p = BiPoly::from_terms(&[(0, 1, 1), (1, 0, -1)]);
        let t = AlgebraicReal::sqrt_rational(&rat(2, 1)).unwrap();
        let roots = ExtPolynomial::new(p, t.clone()).real_roots().unwrap();
        assert_eq!(roots, vec![t]);
    }

    #[test]
    fn coefficients_from_one_quadratic_field() {
        use crate::algebra::parse_real;
        // z^2 - 2 with coefficients written through sqrt(8) and sqrt(2): roots +-sqrt(2)
        let c0 = parse_real("-sqrt(8)/2 * sqrt(2)").unwrap();
        let c1 = parse_real("0").unwrap();
        let c2 = parse_real("1").unwrap();
        let p = ExtPolynomial::from_coefficients(&[c0, c1, c2]).unwrap();
        assert_eq!(p.real_roots().unwrap().len(), 2);
        // z - sqrt(2): a single root even though the conjugate polynomial z + sqrt(2) differs
        let lin = ExtPolynomial::from_coefficients(&[parse_real("-sqrt(8)").unwrap(), parse_real("2").unwrap()]).unwrap();
        let roots = lin.real_roots().unwrap();
        assert_eq!(roots, vec![parse_real("sqrt(2)").unwrap()]);
        let mixed = ExtPolynomial::from_coefficients(&[parse_real("sqrt(2)").unwrap(), parse_real("sqrt(3)").unwrap()]);
        assert!(matches!(mixed, Err(Error::InconsistentField(_))));
    }

    #[test]
    fn shared_roots_across_conjugates_are_kept() {
        // t^2 z^2 - 1 with t = sqrt(2): both conjugates give z = +-1/sqrt(2)
        let p = BiPoly::from_terms(&[(2, 2, 1), (0, 0, -1)]);
        let t = AlgebraicReal::sqrt_rational(&Rational::from_integer(2.into())).unwrap();
        assert_eq!(ExtPolynomial::new(p, t).real_roots().unwrap().len(), 2);
    }
}
