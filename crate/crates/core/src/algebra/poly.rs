use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Interval, Rational};

/// Dense univariate polynomial with arbitrary precision integer coefficients,
/// lowest degree first. Trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<Self, String> {
        v.iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(|e| format!("bad coefficient {s:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(IntPolynomial::new)
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Primitive integer polynomial `den*x - num` vanishing at `r`.
    pub fn linear_with_root(r: &Rational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    /// Integer polynomial with the same roots as the rational polynomial `coeffs`.
    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Self::new(coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let (num, den) = self.eval_homogeneous(x);
        Rational::new(num, den)
    }

    /// `(den^n * p(x), den^n)` with `n = deg p`, computed over the integers.
    fn eval_homogeneous(&self, x: &Rational) -> (BigInt, BigInt) {
        let n = self.deg();
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        // Horner in homogeneous form: sum c_i a^i b^(n-i)
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        let den = num_traits::pow(b.clone(), n);
        (acc, den)
    }

    /// Exact sign of `p(x)`.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let (num, _) = self.eval_homogeneous(x);
        num.cmp(&BigInt::zero())
    }

    /// Interval enclosure of `p` over `x` by Horner's scheme in interval arithmetic.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Interval::point(Rational::from_integer(c.clone()));
        }
        acc
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| super::rational_to_f64(&Rational::from_integer(c.clone()))).collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `x^deg * p(1/x)`
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Integer polynomial whose roots are `r + root(p)`, i.e. primitive part of `p(x - r)`.
    pub fn shift(&self, r: &Rational) -> Self {
        // p(x - a/b) * b^n = sum c_i (b x - a)^i b^(n-i)
        let n = self.deg();
        let (a, b) = (r.numer().clone(), r.denom().clone());
        let lin = IntPolynomial::new(vec![-a, b.clone()]);
        let mut acc = IntPolynomial::zero();
        let mut pow = IntPolynomial::constant(BigInt::one());
        for (i, c) in self.coeffs.iter().enumerate() {
            let bpow = num_traits::pow(b.clone(), n - i);
            acc = &acc + &pow.scale(&(c * bpow));
            pow = &pow * &lin;
        }
        acc.primitive_part()
    }

    /// Integer polynomial whose roots are `r * root(p)` for nonzero `r`.
    pub fn scale_roots(&self, r: &Rational) -> Self {
        assert!(!r.is_zero(), "scale_roots by zero");
        // p(x / r) with r = a/b: sum c_i b^i x^i a^(n-i)
        let n = self.deg();
        let (a, b) = (r.numer(), r.denom());
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * num_traits::pow(b.clone(), i) * num_traits::pow(a.clone(), n - i))
                .collect(),
        )
        .primitive_part()
    }

    /// `p(q(x))`
    pub fn compose(&self, q: &IntPolynomial) -> Self {
        let mut acc = IntPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &IntPolynomial::constant(c.clone());
        }
        acc
    }

    /// Pseudo-remainder with a positive multiplier: `|lc(b)|^(deg a - deg b + 1) * a mod b`,
    /// which preserves the sign semantics needed by Sturm chains.
    pub fn signed_pseudo_rem(&self, b: &IntPolynomial) -> Self {
        assert!(!b.is_zero(), "pseudo remainder by zero");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return self.clone();
        }
        let lb = b.leading();
        let lb_abs = lb.abs();
        let mut r = self.coeffs.clone();
        let mut steps = 0usize;
        let delta = self.deg() - db + 1;
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1;
            let lr = r[k].clone();
            if lr.is_zero() {
                r.pop();
                continue;
            }
            // r <- |lb| * r - sign(lb) * lr x^(k-db) b
            for c in r.iter_mut() {
                *c *= &lb_abs;
            }
            let factor = if lb.is_negative() { -lr } else { lr };
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k - db + j] -= &factor * bc;
            }
            debug_assert!(r[k].is_zero());
            r.pop();
            steps += 1;
        }
        for _ in steps..delta {
            for c in r.iter_mut() {
                *c *= &lb_abs;
            }
        }
        IntPolynomial::new(r)
    }

    /// Exact quotient over the integers, if `b` divides `self` in `Z[x]`.
    pub fn div_exact(&self, b: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!b.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - db + 1];
        for k in (db..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let (qk, rem) = r[k].div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k - db + j] -= &qk * bc;
            }
            q[k - db] = qk;
        }
        r.iter().all(|c| c.is_zero()).then(|| IntPolynomial::new(q))
    }

    /// Greatest common divisor in `Z[x]`, primitive with positive leading coefficient
    /// (times the gcd of the contents).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.signed_pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part().scale(&c)
    }

    /// Product of the distinct irreducible factors, primitive.
    pub fn squarefree_part(&self) -> IntPolynomial {
        if self.deg() < 1 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            return self.primitive_part();
        }
        self.primitive_part().div_exact(&g.primitive_part()).expect("gcd divides").primitive_part()
    }

    /// Square-free decomposition `p = c * prod f_i^i`, returning `(f_i, i)` with `deg f_i > 0`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPolynomial, usize)> {
        let p = self.primitive_part();
        if p.deg() < 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut c = p.gcd(&p.derivative()).primitive_part();
        let mut w = p.div_exact(&c).expect("gcd divides").primitive_part();
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&c).primitive_part();
            let z = w.div_exact(&y).expect("gcd divides").primitive_part();
            if z.deg() > 0 {
                out.push((z, i));
            }
            c = c.div_exact(&y).expect("gcd divides").primitive_part();
            w = y;
            i += 1;
        }
        out
    }

    /// Display with a custom variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, -1, 1, 1]));
        assert_eq!(a.eval(&rat(1, 2)), rat(-3, 4));
        assert_eq!(a.sign_at(&rat(1, 1)), Ordering::Equal);
        assert_eq!(a.derivative(), p(&[0, 2]));
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[2, 0, 1])));
        assert_eq!(a.div_exact(&p(&[1, 1])), None);
    }

    #[test]
    fn squarefree() {
        let a = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 0, 1]);
        assert_eq!(a.squarefree_part(), &p(&[-1, 1]) * &p(&[2, 0, 1]));
        let dec = a.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[2, 0, 1]), 1), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn shift_and_scale() {
        // roots of x^2 - 2 shifted by 1/2: (x - 1/2)^2 - 2 -> 4x^2 - 4x - 7
        assert_eq!(p(&[-2, 0, 1]).shift(&rat(1, 2)), p(&[-7, -4, 4]));
        // roots of x^2 - 2 scaled by 1/2 -> x^2 - 1/2 -> 2x^2 - 1
        assert_eq!(p(&[-2, 0, 1]).scale_roots(&rat(1, 2)), p(&[-1, 0, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 2, 0, -1]).to_string(), "-x^3 + 2x - 1");
    }
}
