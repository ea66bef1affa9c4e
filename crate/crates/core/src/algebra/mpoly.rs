use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Multivariate polynomial with rational coefficients over named variables.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let i = vars.iter().position(|v| *v == name).unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut p = Self::zero(vars);
        let mut m = vec![0; vars.len()];
        m[i] = 1;
        p.terms.insert(m, Rational::one());
        p
    }

    fn like(&self, terms: BTreeMap<Monomial, Rational>) -> Self {
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))
    }

    pub fn degree_in(&self, name: &str) -> Result<u32> {
        let i = self.index(name)?;
        Ok(self.terms.keys().map(|m| m[i]).max().unwrap_or(0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.like(BTreeMap::new());
        }
        self.like(self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        self.like(terms)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let e = terms.entry(m).or_insert_with(Rational::zero);
                *e += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        self.like(terms)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(&self.var_refs(), Rational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    /// Replaces variable `name` by the polynomial `value`.
    pub fn substitute(&self, name: &str, value: &MPoly) -> Result<Self> {
        let i = self.index(name)?;
        let mut out = self.like(BTreeMap::new());
        let mut powers: Vec<MPoly> = vec![Self::constant(&self.var_refs(), Rational::one())];
        for (m, c) in &self.terms {
            let e = m[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let mut rest = m.clone();
            rest[i] = 0;
            let mono = self.like(BTreeMap::from([(rest, c.clone())]));
            out = out.add(&mono.mul(&powers[e]));
        }
        Ok(out)
    }

    /// Substitutes a rational value for a variable.
    pub fn substitute_rational(&self, name: &str, value: &Rational) -> Result<Self> {
        self.substitute(name, &Self::constant(&self.var_refs(), value.clone()))
    }

    /// Evaluates with every variable given a rational value.
    pub fn eval(&self, values: &[(&str, Rational)]) -> Result<Rational> {
        let mut p = self.clone();
        for (name, v) in values {
            p = p.substitute_rational(name, v)?;
        }
        if p.terms.keys().any(|m| m.iter().any(|&e| e > 0)) {
            return Err(Error::Invalid("evaluation leaves free variables".into()));
        }
        Ok(p.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    /// Normal form modulo `g^2 = g + 1` for the golden-ratio variable `g`:
    /// every exponent of `g` is reduced below 2.
    pub fn reduce_golden(&self, g: &str) -> Result<Self> {
        let i = self.index(g)?;
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            // g^e = F(e) g + F(e-1) with Fibonacci numbers
            let e = m[i];
            let (fa, fb) = fibonacci_pair(e);
            let mut base = m.clone();
            base[i] = 1;
            let mut low = m.clone();
            low[i] = 0;
            for (mono, coeff) in [(base, Rational::from_integer(fa.into()) * c), (low, Rational::from_integer(fb.into()) * c)] {
                if coeff.is_zero() {
                    continue;
                }
                let e = terms.entry(mono).or_insert_with(Rational::zero);
                *e += coeff;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(self.like(terms))
    }

    /// Coefficients in one variable: `out[k]` multiplies `name^k`.
    pub fn coefficients_in(&self, name: &str) -> Result<Vec<MPoly>> {
        let i = self.index(name)?;
        let deg = self.degree_in(name)? as usize;
        let mut out = vec![self.like(BTreeMap::new()); deg + 1];
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest[i] as usize;
            rest[i] = 0;
            out[e].terms.insert(rest, c.clone());
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
                .collect();
            if mono.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&abs), mono.join("*")));
            }
        }
        out
    }
}

/// `(F(e), F(e-1))` with `g^e = F(e) g + F(e-1)`; `(0, 1)` for `e = 0`.
fn fibonacci_pair(e: u32) -> (u64, u64) {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..e {
        let next = a + b;
        b = a;
        a = next;
    }
    (a, b)
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

/// Determinant of a square polynomial matrix by cofactor expansion along the first row.
pub fn mpoly_determinant(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidMatrix("matrix is not square".into()));
    }
    Ok(laplace(m, &(0..n).collect::<Vec<_>>(), 0))
}

fn laplace(m: &[Vec<MPoly>], cols: &[usize], row: usize) -> MPoly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = m[row][cols[0]].like(BTreeMap::new());
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.mul(&laplace(m, &rest, row + 1));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    const V: [&str; 3] = ["s", "t", "g"];

    #[test]
    fn arithmetic_and_evaluation() {
        let s = MPoly::var(&V, "s");
        let t = MPoly::var(&V, "t");
        let p = s.add(&t).pow(2);
        let q = s.pow(2).add(&s.mul(&t).scale(&int(2))).add(&t.pow(2));
        assert_eq!(p, q);
        assert_eq!(p.eval(&[("s", rat(1, 2)), ("t", rat(1, 3)), ("g", int(0))]).unwrap(), rat(25, 36));
    }

    #[test]
    fn golden_reduction() {
        let g = MPoly::var(&V, "g");
        let one = MPoly::constant(&V, int(1));
        // g^2 - g - 1 reduces to zero, and (g - 1) g = 1
        assert!(g.pow(2).sub(&g).sub(&one).reduce_golden("g").unwrap().is_zero());
        assert_eq!(g.sub(&one).mul(&g).reduce_golden("g").unwrap(), one);
        // g^5 = 5g + 3
        let five = g.scale(&int(5)).add(&MPoly::constant(&V, int(3)));
        assert_eq!(g.pow(5).reduce_golden("g").unwrap(), five);
    }

    #[test]
    fn determinant_and_substitution() {
        let s = MPoly::var(&V, "s");
        let one = MPoly::constant(&V, int(1));
        let m = vec![vec![s.clone(), one.clone()], vec![one.clone(), s.clone()]];
        let d = mpoly_determinant(&m).unwrap();
        assert_eq!(d, s.pow(2).sub(&one));
        assert!(d.substitute("s", &one).unwrap().is_zero());
        assert_eq!(d.display(), "s^2 - 1");
    }
}
