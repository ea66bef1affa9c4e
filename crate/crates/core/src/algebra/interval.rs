use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{fmt_rational, parse_rational, rational_to_f64, Rational};
use crate::error::{Error, Result};

/// Closed rational interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!(
                "interval lower bound {} exceeds upper bound {}",
                fmt_rational(&lo),
                fmt_rational(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: (&self.lo).min(&other.lo).clone(), hi: (&self.hi).max(&other.hi).clone() }
    }

    /// Gap between two disjoint intervals, `None` when they overlap.
    pub fn gap(&self, other: &Interval) -> Option<Rational> {
        if self.hi < other.lo {
            Some(&other.lo - &self.hi)
        } else if other.hi < self.lo {
            Some(&self.lo - &other.hi)
        } else {
            None
        }
    }

    /// Interval reciprocal; fails when the interval contains zero.
    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        Ok(self * &other.recip()?)
    }

    /// Magnitude lower bound: `min |x|` over the interval.
    pub fn mig(&self) -> Rational {
        if self.contains_zero() {
            Rational::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// Magnitude upper bound: `max |x|` over the interval.
    pub fn mag(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (rational_to_f64(&self.lo), rational_to_f64(&self.hi))
    }

    pub fn approx(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interval{self}")
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [fmt_rational(&self.lo), fmt_rational(&self.hi)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rational(&lo).map_err(serde::de::Error::custom)?;
        let hi = parse_rational(&hi).map_err(serde::de::Error::custom)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn arithmetic_encloses_products() {
        let a = Interval::new(rat(-1, 2), rat(1, 1)).unwrap();
        let b = Interval::new(rat(2, 1), rat(3, 1)).unwrap();
        assert_eq!(&a * &b, Interval::new(rat(-3, 2), rat(3, 1)).unwrap());
        assert_eq!(&a - &b, Interval::new(rat(-7, 2), rat(-1, 1)).unwrap());
        assert!(a.recip().is_err());
        assert_eq!(b.recip().unwrap(), Interval::new(rat(1, 3), rat(1, 2)).unwrap());
    }

    #[test]
    fn gap_and_overlap() {
        let a = Interval::new(rat(0, 1), rat(1, 1)).unwrap();
        let b = Interval::new(rat(3, 2), rat(2, 1)).unwrap();
        assert_eq!(a.gap(&b), Some(rat(1, 2)));
        assert!(!a.overlaps(&b));
        assert!(Interval::new(rat(1, 1), rat(0, 1)).is_err());
    }
}
