//! Cosines of rational angles: exact minimal polynomials from cyclotomic
//! polynomials, exhaustive catalogs by algebraic degree, and exact matching of an
//! algebraic number against those catalogs.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{euler_totient, fmt_rational, mobius, AlgebraicReal, IntPolynomial, Rational};
use crate::error::{Error, Result};

/// Largest cosine degree searched by [`match_rational_angle`].
pub const MAX_MATCH_DEGREE: usize = 8;

/// The angle `p/q * pi`, stored in lowest terms with `q > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalAngle {
    p: i64,
    q: i64,
}

impl RationalAngle {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("angle with zero denominator".into()));
        }
        let g = p.gcd(&q);
        let sign = if q < 0 { -1 } else { 1 };
        Ok(RationalAngle { p: sign * p / g, q: sign * q / g })
    }

    /// `pi / n`.
    pub fn pi_over(n: i64) -> Result<Self> {
        Self::new(1, n)
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    /// Multiple of pi as a rational.
    pub fn as_pi_multiple(&self) -> Rational {
        Rational::new(self.p.into(), self.q.into())
    }

    /// The angle in `[0, pi]` with the same cosine.
    pub fn canonical(&self) -> Self {
        let two_q = 2 * self.q;
        let mut p = self.p.rem_euclid(two_q);
        if p > self.q {
            p = two_q - p;
        }
        RationalAngle::new(p, self.q).expect("nonzero denominator")
    }

    pub fn is_canonical(&self) -> bool {
        self.p >= 0 && self.p <= self.q
    }

    /// `pi` minus the angle.
    pub fn supplement(&self) -> Self {
        RationalAngle::new(self.q - self.p, self.q).expect("nonzero denominator")
    }

    /// The angle in degrees.
    pub fn degrees(&self) -> Rational {
        self.as_pi_multiple() * Rational::from_integer(180.into())
    }

    /// `(m, n)` with the canonical angle equal to `2 pi m / n`, `gcd(m, n) = 1`.
    pub fn turns(&self) -> (u64, u64) {
        let c = self.canonical();
        let (m, n) = (c.p, 2 * c.q);
        let g = m.gcd(&n);
        ((m / g) as u64, (n / g) as u64)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p, self.q) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "pi"),
            (p, 1) => write!(f, "{p}pi"),
            (1, q) => write!(f, "pi/{q}"),
            (p, q) => write!(f, "{p}pi/{q}"),
        }
    }
}

/// Cyclotomic polynomial `Phi_n` as a product of `(x^d - 1)^mu(n/d)` over divisors `d`.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n > 0, "cyclotomic polynomial of index 0");
    let mut num = IntPolynomial::constant(BigInt::one());
    let mut den = IntPolynomial::constant(BigInt::one());
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let factor = &IntPolynomial::monomial(BigInt::one(), d as usize) - &IntPolynomial::constant(BigInt::one());
        match mobius(n / d) {
            1 => num = &num * &factor,
            -1 => den = &den * &factor,
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

/// Minimal polynomial of `cos(2 pi / n)`, obtained from `Phi_n` by writing
/// `x^-k Phi_n(x)` as a polynomial in `X = x + 1/x` and substituting `X = 2c`.
pub fn cosine_minpoly(n: u64) -> IntPolynomial {
    match n {
        1 => return IntPolynomial::from_i64(&[-1, 1]),
        2 => return IntPolynomial::from_i64(&[1, 1]),
        _ => {}
    }
    let phi = cyclotomic(n);
    let k = phi.deg() / 2;
    // chebyshev-like T_j with x^j + x^-j = T_j(X)
    let x = IntPolynomial::x();
    let mut t_prev = IntPolynomial::constant(2.into());
    let mut t_cur = x.clone();
    let mut acc = IntPolynomial::constant(phi.coeff(k));
    for j in 1..=k {
        acc = &acc + &t_cur.scale(&phi.coeff(k + j));
        let next = &(&x * &t_cur) - &t_prev;
        t_prev = t_cur;
        t_cur = next;
    }
    acc.compose(&IntPolynomial::from_i64(&[0, 2])).primitive_part()
}

/// Algebraic degree of the cosine of the angle.
pub fn cosine_degree(angle: &RationalAngle) -> usize {
    let (_, n) = angle.turns();
    if n <= 2 {
        1
    } else {
        (euler_totient(n).expect("positive") / 2) as usize
    }
}

/// Exact cosine of a rational angle.
pub fn cosine_of(angle: &RationalAngle) -> AlgebraicReal {
    let (m, n) = angle.turns();
    let f = cosine_minpoly(n);
    let roots = AlgebraicReal::real_roots(&f).expect("cosine minimal polynomial is nonzero");
    if n <= 2 {
        return roots.into_iter().next().expect("linear polynomial has a root");
    }
    // roots cos(2 pi k / n), 0 < k < n/2 coprime to n, decrease in k
    let ks: Vec<u64> = (1..).take_while(|k| 2 * k < n).filter(|k| k.gcd(&n) == 1).collect();
    let i = ks.iter().position(|&k| k == m).expect("reduced numerator");
    debug_assert_eq!(roots.len(), ks.len());
    roots[roots.len() - 1 - i].clone()
}

/// All cosines of rational angles with a fixed algebraic degree, sorted by value.
#[derive(Clone, Debug, Serialize)]
pub struct CosineCatalog {
    pub degree: usize,
    pub entries: Vec<(RationalAngle, AlgebraicReal)>,
}

impl CosineCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry equal to `x`, compared exactly.
    pub fn find(&self, x: &AlgebraicReal) -> Option<RationalAngle> {
        self.entries.iter().find(|(_, c)| c.minpoly() == x.minpoly() && c == x).map(|(a, _)| *a)
    }
}

fn build_catalog(degree: usize) -> CosineCatalog {
    let bound = 2 * (2 * degree as u64).pow(2);
    let mut entries: Vec<(RationalAngle, AlgebraicReal)> = Vec::new();
    for n in 1..=bound.max(6) {
        let phi = euler_totient(n).expect("positive");
        let matches = if degree == 1 { phi <= 2 } else { phi == 2 * degree as u64 };
        if !matches {
            continue;
        }
        for m in (0..=n / 2).filter(|m| m.gcd(&n) == 1) {
            let angle = RationalAngle::new(2 * m as i64, n as i64).expect("positive denominator");
            let c = cosine_of(&angle);
            if entries.iter().all(|(_, e)| e != &c) {
                entries.push((angle, c));
            }
        }
    }
    entries.sort_by(|a, b| a.1.cmp(&b.1));
    CosineCatalog { degree, entries }
}

fn catalog_cache() -> &'static Mutex<BTreeMap<usize, Arc<CosineCatalog>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<CosineCatalog>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Exhaustive list of rational-angle cosines of the given degree. Degree 1 includes
/// the degenerate angles `0` and `pi`.
pub fn catalog(degree: usize) -> Result<Arc<CosineCatalog>> {
    if degree == 0 {
        return Err(Error::Domain("cosine degree must be positive".into()));
    }
    if let Some(c) = catalog_cache().lock().expect("catalog cache").get(&degree) {
        return Ok(c.clone());
    }
    let built = Arc::new(build_catalog(degree));
    catalog_cache().lock().expect("catalog cache").insert(degree, built.clone());
    Ok(built)
}

/// The angle in `[0, pi]` whose cosine is exactly `x`, if its cosine degree is at most
/// [`MAX_MATCH_DEGREE`].
pub fn match_rational_angle(x: &AlgebraicReal) -> Result<Option<RationalAngle>> {
    let one = AlgebraicReal::one();
    if x > &one || x < &one.neg() {
        return Err(Error::Domain(format!("{x} is not a cosine: outside [-1, 1]")));
    }
    let d = x.degree();
    if d > MAX_MATCH_DEGREE {
        return Ok(None);
    }
    Ok(catalog(d)?.find(x))
}

/// A positive rational lower bound on `|x - y|` for distinct `x, y`, by refining
/// both isolating intervals until they separate.
pub fn certified_gap(x: &AlgebraicReal, y: &AlgebraicReal) -> Option<Rational> {
    if x == y {
        return None;
    }
    let mut width = Rational::new(BigInt::one(), 16.into());
    loop {
        let a = x.enclosure(&width);
        let b = y.enclosure(&width);
        if let Some(g) = a.gap(&b) {
            if !g.is_zero() {
                return Some(g);
            }
        }
        width /= Rational::from_integer(16.into());
    }
}

/// Row of the CLI listing: angle in degrees, minimal polynomial, decimal value.
#[derive(Clone, Debug, Serialize)]
pub struct AngleRecord {
    pub angle_deg: String,
    pub minpoly: Vec<String>,
    pub approx: f64,
}

impl AngleRecord {
    pub fn new(angle: Option<&RationalAngle>, value: &AlgebraicReal) -> Self {
        AngleRecord {
            angle_deg: angle.map_or_else(|| "none".to_string(), |a| fmt_rational(&a.degrees())),
            minpoly: value.minpoly().clone().into(),
            approx: value.to_f64(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_real, rat};

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(105).coeff(7), BigInt::from(-2));
    }

    #[test]
    fn known_cosines() {
        assert_eq!(cosine_of(&RationalAngle::pi_over(3).unwrap()), AlgebraicReal::from_rational(rat(1, 2)));
        let c72 = cosine_of(&RationalAngle::new(2, 5).unwrap());
        assert_eq!(c72.minpoly(), &IntPolynomial::from_i64(&[-1, 2, 4]));
        assert!((c72.to_f64() - 0.309).abs() < 1e-3);
        let c15 = cosine_of(&RationalAngle::pi_over(12).unwrap());
        assert_eq!(c15.degree(), 4);
        assert!((c15.to_f64() - 0.966).abs() < 1e-3);
        assert_eq!(cosine_of(&RationalAngle::pi_over(4).unwrap()), parse_real("sqrt(2)/2").unwrap());
        assert_eq!(cosine_of(&RationalAngle::new(1, 1).unwrap()), AlgebraicReal::from_integer(-1));
        assert_eq!(cosine_of(&RationalAngle::new(7, 3).unwrap()), AlgebraicReal::from_rational(rat(1, 2)));
    }

    #[test]
    fn degrees_of_listed_angles() {
        assert_eq!(cosine_degree(&RationalAngle::pi_over(4).unwrap()), 2);
        assert_eq!(cosine_degree(&RationalAngle::pi_over(3).unwrap()), 1);
        assert_eq!(cosine_degree(&RationalAngle::new(7, 15).unwrap()), 4);
    }

    #[test]
    fn catalogs_have_expected_sizes() {
        let c1 = catalog(1).unwrap();
        let vals: Vec<Rational> = c1.entries.iter().map(|(_, c)| c.to_rational().unwrap()).collect();
        assert_eq!(vals, vec![rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)]);
        assert_eq!(catalog(2).unwrap().len(), 8);
        let c4 = catalog(4).unwrap();
        assert_eq!(c4.len(), 20);
        let mut degs: Vec<Rational> = c4.entries.iter().map(|(a, _)| a.degrees()).filter(|d| d < &Rational::from_integer(90.into())).collect();
        degs.sort();
        let expect: Vec<Rational> = [12, 15, 18, 24, 48, 54, 75, 84].iter().map(|&d| rat(d, 1)).chain([rat(45, 2)]).chain([rat(135, 2)]).collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(degs, expect);
    }

    #[test]
    fn matching() {
        assert_eq!(match_rational_angle(&AlgebraicReal::from_rational(rat(1, 2))).unwrap(), Some(RationalAngle::pi_over(3).unwrap()));
        assert_eq!(match_rational_angle(&parse_real("phi - 1").unwrap()).unwrap(), None);
        assert!(match_rational_angle(&AlgebraicReal::from_integer(2)).is_err());
        let c = parse_real("-sqrt(3)/2").unwrap();
        assert_eq!(match_rational_angle(&c).unwrap(), Some(RationalAngle::new(5, 6).unwrap()));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(RationalAngle::new(-1, 3).unwrap().canonical(), RationalAngle::new(1, 3).unwrap());
        assert_eq!(RationalAngle::new(5, 3).unwrap().canonical(), RationalAngle::new(1, 3).unwrap());
        assert_eq!(RationalAngle::new(2, 4).unwrap(), RationalAngle::new(1, 2).unwrap());
        assert_eq!(RationalAngle::new(1, 5).unwrap().turns(), (1, 10));
        assert_eq!(RationalAngle::new(1, 5).unwrap().to_string(), "pi/5");
    }
}
