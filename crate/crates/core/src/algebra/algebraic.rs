use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factor_squarefree;
use super::linalg::Field;
use super::number::perfect_square_root;
use super::resultant::{resultant_in_y, BiPoly};
use super::sturm::{bisect_root, refine_root, sturm_isolate, SturmSequence};
use super::{fmt_rational, rational_sqrt, rational_to_f64, sqrt_bounds, IntPolynomial, Interval, Rational};
use crate::error::{Error, Result};

/// Largest degree of a resultant-based arithmetic result.
pub const ARITH_DEGREE_CAP: usize = 8;

const MAX_REFINEMENTS: usize = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A real algebraic number: its minimal polynomial (primitive, positive leading
/// coefficient) together with a rational interval isolating the root. Rationals use
/// a linear minimal polynomial and a point interval.
#[derive(Clone)]
pub struct AlgebraicReal {
    minpoly: IntPolynomial,
    interval: Interval,
}

impl AlgebraicReal {
    pub fn from_rational(r: Rational) -> Self {
        AlgebraicReal { minpoly: IntPolynomial::linear_with_root(&r), interval: Interval::point(r) }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The unique root of `p` in the closed interval `iv`.
    pub fn new(p: &IntPolynomial, iv: Interval) -> Result<Self> {
        let seq = SturmSequence::new(p)?;
        if seq.count_closed(&iv.lo, &iv.hi) != 1 {
            return Err(Error::Invalid(format!("{iv} does not isolate a single root of {p}")));
        }
        for f in factor_squarefree(p)? {
            let fs = SturmSequence::new(&f)?;
            if fs.count_closed(&iv.lo, &iv.hi) == 1 {
                return Ok(Self::from_irreducible(f, iv));
            }
        }
        Err(Error::Numerical("no factor owns the isolated root".into()))
    }

    /// `f` irreducible with exactly one root in `iv`.
    fn from_irreducible(f: IntPolynomial, iv: Interval) -> Self {
        if f.deg() == 1 {
            return Self::from_rational(Rational::new(-f.coeff(0), f.coeff(1)));
        }
        AlgebraicReal { minpoly: f.primitive_part(), interval: iv }
    }

    /// All distinct real roots of `p` in increasing order.
    pub fn real_roots(p: &IntPolynomial) -> Result<Vec<Self>> {
        if p.is_zero() {
            return Err(Error::UndefinedRootSet);
        }
        let mut out = Vec::new();
        for f in factor_squarefree(p)? {
            if f.deg() == 1 {
                out.push(Self::from_irreducible(f, Interval::point(Rational::zero())));
                continue;
            }
            for iv in sturm_isolate(&f, None)? {
                out.push(AlgebraicReal { minpoly: f.clone(), interval: iv });
            }
        }
        out.sort();
        Ok(out)
    }

    /// Nonnegative square root of a nonnegative rational.
    pub fn sqrt_rational(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Domain(format!("square root of negative {}", fmt_rational(r))));
        }
        if let Some(s) = rational_sqrt(r) {
            return Ok(Self::from_rational(s));
        }
        let minpoly = IntPolynomial::new(vec![-r.numer().clone(), BigInt::zero(), r.denom().clone()]);
        let (lo, hi) = sqrt_bounds(r, 16);
        Ok(AlgebraicReal { minpoly, interval: Interval { lo, hi } })
    }

    /// Nonnegative square root.
    pub fn sqrt(&self) -> Result<Self> {
        if let Some(r) = self.to_rational() {
            return Self::sqrt_rational(&r);
        }
        if self.sign() == Ordering::Less {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        let degree = 2 * self.degree();
        if degree > ARITH_DEGREE_CAP {
            return Err(Error::DegreeOverflow { degree, cap: ARITH_DEGREE_CAP });
        }
        let candidate = self.minpoly.compose(&IntPolynomial::from_i64(&[0, 0, 1]));
        select_root(&candidate, |w| {
            let iv = self.enclosure(&(w * w));
            let lo = if iv.lo.is_positive() { sqrt_bounds(&iv.lo, bits_for(w)).0 } else { Rational::zero() };
            let hi = sqrt_bounds(&iv.hi.clone().max(Rational::zero()), bits_for(w)).1;
            Ok(Some(Interval { lo, hi }))
        })
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn is_rational(&self) -> bool {
        self.minpoly.deg() == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.interval.lo.clone())
    }

    /// An isolating interval of width at most `width`.
    pub fn enclosure(&self, width: &Rational) -> Interval {
        refine_root(&self.minpoly, &self.interval, width)
    }

    pub fn refine(&mut self, width: &Rational) {
        self.interval = self.enclosure(width);
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.to_rational() {
            return rational_to_f64(&r);
        }
        let scale = self.interval.mag().max(Rational::one());
        let width = scale * Rational::new(BigInt::one(), BigInt::one() << 64);
        self.enclosure(&width).approx()
    }

    pub fn sign(&self) -> Ordering {
        self.cmp(&Self::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_zero())
    }

    pub fn neg(&self) -> Self {
        AlgebraicReal { minpoly: self.minpoly.reflect().primitive_part(), interval: -&self.interval }
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if let Some(r) = self.to_rational() {
            if r.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::from_rational(r.recip()));
        }
        let mut iv = self.interval.clone();
        while iv.contains_zero() {
            iv = bisect_root(&self.minpoly, &iv);
        }
        let interval = iv.recip()?;
        Ok(AlgebraicReal { minpoly: self.minpoly.reverse().primitive_part(), interval })
    }

    /// `x^n` by repeated squaring.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square()?;
            }
        }
        Ok(acc)
    }

    /// `x^2`, through the Graeffe transform `p(x) p(-x) = q(x^2)` of the minimal polynomial.
    pub fn square(&self) -> Result<Self> {
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(&r * &r));
        }
        let prod = &self.minpoly * &self.minpoly.reflect();
        let q = IntPolynomial::new(prod.coeffs().iter().step_by(2).cloned().collect());
        select_root(&q, |w| {
            let iv = self.enclosure(w);
            let sq = &iv * &iv;
            Ok(Some(if iv.contains_zero() { Interval { lo: Rational::zero(), hi: sq.hi } } else { sq }))
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.arith(ArithOp::Add, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.arith(ArithOp::Sub, other)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.arith(ArithOp::Mul, other)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.arith(ArithOp::Div, other)
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        if let Some(a) = self.to_rational() {
            return Self::from_rational(a + r);
        }
        AlgebraicReal { minpoly: self.minpoly.shift(r), interval: &self.interval + &Interval::point(r.clone()) }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if let Some(a) = self.to_rational() {
            return Self::from_rational(a * r);
        }
        if r.is_zero() {
            return Self::zero();
        }
        AlgebraicReal { minpoly: self.minpoly.scale_roots(r), interval: &self.interval * &Interval::point(r.clone()) }
    }

    /// Exact arithmetic. Rational operands and pairs of quadratic irrationals from
    /// one field are handled directly; otherwise the result is selected among the
    /// roots of a resultant, whose degree is limited to [`ARITH_DEGREE_CAP`].
    pub fn arith(&self, op: ArithOp, other: &Self) -> Result<Self> {
        match (self.to_rational(), other.to_rational()) {
            (Some(a), Some(b)) => {
                return Ok(Self::from_rational(match op {
                    ArithOp::Add => a + b,
                    ArithOp::Sub => a - b,
                    ArithOp::Mul => a * b,
                    ArithOp::Div => {
                        if b.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        a / b
                    }
                }))
            }
            (None, Some(r)) => {
                return Ok(match op {
                    ArithOp::Add => self.add_rational(&r),
                    ArithOp::Sub => self.add_rational(&-r),
                    ArithOp::Mul => self.mul_rational(&r),
                    ArithOp::Div => {
                        if r.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        self.mul_rational(&r.recip())
                    }
                })
            }
            (Some(r), None) => {
                return Ok(match op {
                    ArithOp::Add => other.add_rational(&r),
                    ArithOp::Sub => other.neg().add_rational(&r),
                    ArithOp::Mul => other.mul_rational(&r),
                    ArithOp::Div => other.recip()?.mul_rational(&r),
                })
            }
            (None, None) => {}
        }
        if op == ArithOp::Mul && self.minpoly == other.minpoly && self == other {
            return self.square();
        }
        if let Some(result) = self.quadratic_arith(op, other) {
            return Ok(result);
        }
        let degree = self.degree() * other.degree();
        if degree > ARITH_DEGREE_CAP {
            return Err(Error::DegreeOverflow { degree, cap: ARITH_DEGREE_CAP });
        }
        let (p, q) = (&self.minpoly, &other.minpoly);
        let candidate = match op {
            ArithOp::Add => resultant_in_y(&BiPoly::from_y(p), &BiPoly::shifted_difference(q))?,
            ArithOp::Sub => resultant_in_y(&BiPoly::from_y(q), &BiPoly::shifted_sum(p))?,
            ArithOp::Mul => resultant_in_y(&BiPoly::from_y(q), &BiPoly::homogenized(p))?,
            ArithOp::Div => resultant_in_y(&BiPoly::from_y(q), &BiPoly::product_argument(p))?,
        };
        select_root(&candidate, |w| {
            let a = self.enclosure(w);
            let b = other.enclosure(w);
            Ok(match op {
                ArithOp::Add => Some(&a + &b),
                ArithOp::Sub => Some(&a - &b),
                ArithOp::Mul => Some(&a * &b),
                ArithOp::Div => a.div(&b).ok(),
            })
        })
    }

    /// `(a, b, d)` with value `a + b sqrt(d)` for a quadratic irrational.
    /// `(a, b, d)` with `self = a + b sqrt(d)` for quadratic numbers.
    pub(crate) fn quadratic_parts(&self) -> Option<(Rational, Rational, BigInt)> {
        if self.degree() != 2 {
            return None;
        }
        let (c0, c1, c2) = (self.minpoly.coeff(0), self.minpoly.coeff(1), self.minpoly.coeff(2));
        let disc = &c1 * &c1 - BigInt::from(4) * &c2 * &c0;
        let two_c2 = Rational::from_integer(BigInt::from(2) * &c2);
        let a = Rational::from_integer(-c1) / &two_c2;
        let b = Rational::one() / &two_c2;
        let larger = self.cmp_rational(&a) == Ordering::Greater;
        Some((a, if larger { b } else { -b }, disc))
    }

    fn quadratic_arith(&self, op: ArithOp, other: &Self) -> Option<Self> {
        let (a1, b1, d) = self.quadratic_parts()?;
        let (a2, b2, d2) = other.quadratic_parts()?;
        let s = perfect_square_root(&(&d * &d2))?;
        // sqrt(d2) = s / sqrt(d) = (s / d) sqrt(d)
        let b2 = b2 * Rational::new(s, d.clone());
        let dr = Rational::from_integer(d.clone());
        let (a, b) = match op {
            ArithOp::Add => (a1 + a2, b1 + b2),
            ArithOp::Sub => (a1 - a2, b1 - b2),
            ArithOp::Mul => (&a1 * &a2 + &b1 * &b2 * &dr, &a1 * &b2 + &a2 * &b1),
            ArithOp::Div => {
                let norm = &a2 * &a2 - &b2 * &b2 * &dr;
                (
                    (&a1 * &a2 - &b1 * &b2 * &dr) / &norm,
                    (&b1 * &a2 - &a1 * &b2) / &norm,
                )
            }
        };
        Some(Self::from_quadratic(&a, &b, &d))
    }

    /// `a + b sqrt(d)` for a positive non-square integer `d`.
    pub(crate) fn from_quadratic(a: &Rational, b: &Rational, d: &BigInt) -> Self {
        if b.is_zero() {
            return Self::from_rational(a.clone());
        }
        let dr = Rational::from_integer(d.clone());
        let c0 = a * a - b * b * &dr;
        let minpoly = IntPolynomial::from_rationals(&[c0, -(a * Rational::from_integer(2.into())), Rational::one()])
            .primitive_part();
        let seq = SturmSequence::new(&minpoly).expect("nonzero");
        let mut bits = 8;
        loop {
            let (lo, hi) = sqrt_bounds(&dr, bits);
            let iv = &Interval::point(a.clone()) + &(&Interval::point(b.clone()) * &Interval { lo, hi });
            if seq.count_closed(&iv.lo, &iv.hi) == 1 {
                return AlgebraicReal { minpoly, interval: iv };
            }
            bits += 8;
        }
    }

    fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.cmp(&Self::from_rational(r.clone()))
    }
}

fn bits_for(w: &Rational) -> u32 {
    // smallest k with 2^-k <= w, plus a margin
    let mut k = 0u32;
    let mut scale = Rational::one();
    while &scale > w {
        scale /= Rational::from_integer(2.into());
        k += 1;
    }
    k + 2
}

/// Picks the root of `candidate` lying in shrinking enclosures of the exact value.
fn select_root<F>(candidate: &IntPolynomial, mut enclose: F) -> Result<AlgebraicReal>
where
    F: FnMut(&Rational) -> Result<Option<Interval>>,
{
    if candidate.is_zero() {
        return Err(Error::Numerical("vanishing resultant".into()));
    }
    let factors = factor_squarefree(candidate)?;
    let seqs: Vec<SturmSequence> = factors.iter().map(SturmSequence::new).collect::<Result<_>>()?;
    let mut width = Rational::new(1.into(), 16.into());
    for _ in 0..MAX_REFINEMENTS {
        if let Some(iv) = enclose(&width)? {
            let counts: Vec<usize> = seqs.iter().map(|s| s.count_closed(&iv.lo, &iv.hi)).collect();
            let total: usize = counts.iter().sum();
            if total == 0 {
                return Err(Error::Numerical(format!("enclosure {iv} misses every candidate root")));
            }
            if total == 1 {
                let k = counts.iter().position(|&c| c == 1).expect("one factor counted");
                let f = factors[k].clone();
                if f.deg() == 1 {
                    return Ok(AlgebraicReal::from_rational(Rational::new(-f.coeff(0), f.coeff(1))));
                }
                return Ok(AlgebraicReal::from_irreducible(f, iv));
            }
        }
        width /= Rational::from_integer(16.into());
    }
    Err(Error::Inconclusive("could not separate the result from other candidate roots".into()))
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.to_rational(), other.to_rational()) {
            return a.cmp(&b);
        }
        if self.minpoly == other.minpoly {
            match self.interval.intersection(&other.interval) {
                None => return self.interval.lo.cmp(&other.interval.lo),
                Some(iv) => {
                    let seq = SturmSequence::new(&self.minpoly).expect("nonzero minimal polynomial");
                    if seq.count_closed(&iv.lo, &iv.hi) > 0 {
                        return Ordering::Equal;
                    }
                }
            }
        }
        // distinct values: refine until the intervals separate
        let mut a = self.interval.clone();
        let mut b = other.interval.clone();
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            a = bisect_root(&self.minpoly, &a);
            b = bisect_root(&other.minpoly, &b);
        }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) => write!(f, "{}", fmt_rational(&r)),
            None => write!(f, "root of {} in {} (~{:.12})", self.minpoly, self.interval, self.to_f64()),
        }
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicReal({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraicRepr {
    minpoly: IntPolynomial,
    interval: Interval,
}

impl Serialize for AlgebraicReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraicRepr { minpoly: self.minpoly.clone(), interval: self.interval.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = AlgebraicRepr::deserialize(d)?;
        AlgebraicReal::new(&repr.minpoly, repr.interval).map_err(serde::de::Error::custom)
    }
}

impl Field for AlgebraicReal {
    fn from_int(n: i64) -> Self {
        AlgebraicReal::from_integer(n)
    }
    fn from_rational(r: &Rational) -> Self {
        AlgebraicReal::from_rational(r.clone())
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.sub(other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn try_div(&self, other: &Self) -> Result<Self> {
        self.div(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn sign(&self) -> Ordering {
        AlgebraicReal::sign(self)
    }
    fn approx_f64(&self) -> f64 {
        self.to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn sqrt(n: i64) -> AlgebraicReal {
        AlgebraicReal::sqrt_rational(&int(n)).unwrap()
    }

    #[test]
    fn square_roots_and_signs() {
        let s2 = sqrt(2);
        assert_eq!(s2.minpoly(), &IntPolynomial::from_i64(&[-2, 0, 1]));
        assert!((s2.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sqrt(4), AlgebraicReal::from_integer(2));
        assert_eq!(s2.neg().sign(), Ordering::Less);
        assert!(AlgebraicReal::sqrt_rational(&int(-1)).is_err());
    }

    #[test]
    fn same_field_arithmetic_is_exact() {
        let s2 = sqrt(2);
        let s8 = sqrt(8);
        assert_eq!(s2.mul(&s2).unwrap(), int_alg(2));
        assert_eq!(s8.div(&s2).unwrap(), int_alg(2));
        assert_eq!(s8.sub(&s2).unwrap(), s2);
        let golden = sqrt(5).add_rational(&int(1)).mul_rational(&rat(1, 2));
        let g2 = golden.mul(&golden).unwrap();
        assert_eq!(g2, golden.add_rational(&int(1)));
    }

    #[test]
    fn resultant_arithmetic() {
        let s = sqrt(2).add(&sqrt(3)).unwrap();
        assert_eq!(s.minpoly(), &IntPolynomial::from_i64(&[1, 0, -10, 0, 1]));
        assert!((s.to_f64() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-14);
        let back = s.sub(&sqrt(3)).unwrap();
        assert_eq!(back, sqrt(2));
        let p = sqrt(2).mul(&sqrt(3)).unwrap();
        assert_eq!(p, sqrt(6));
        let q = sqrt(6).div(&sqrt(3)).unwrap();
        assert_eq!(q, sqrt(2));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let cube = AlgebraicReal::real_roots(&IntPolynomial::from_i64(&[-2, 0, 0, 1])).unwrap().remove(0);
        let err = cube.add(&sqrt(2).add(&sqrt(3)).unwrap()).unwrap_err();
        assert_eq!(err, Error::DegreeOverflow { degree: 12, cap: ARITH_DEGREE_CAP });
    }

    #[test]
    fn real_roots_sorted_and_serialized() {
        let p = &IntPolynomial::from_i64(&[-2, 0, 1]) * &IntPolynomial::from_i64(&[-1, 3]);
        let roots = AlgebraicReal::real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(roots[1], AlgebraicReal::from_rational(rat(1, 3)));
        let json = serde_json::to_string(&roots[2]).unwrap();
        let back: AlgebraicReal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, roots[2]);
        assert_eq!(roots[2].sqrt().unwrap().pow(4).unwrap(), int_alg(2));
    }

    fn int_alg(n: i64) -> AlgebraicReal {
        AlgebraicReal::from_integer(n)
    }
}
