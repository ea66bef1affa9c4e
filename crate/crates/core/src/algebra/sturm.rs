use std::cmp::Ordering;

use num_traits::{One, Signed};

use super::{IntPolynomial, Interval, Rational};
use crate::error::{Error, Result};

/// Sturm chain of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::UndefinedRootSet);
        }
        let p0 = p.squarefree_part();
        let mut chain = vec![p0.clone()];
        if p0.deg() == 0 {
            return Ok(SturmSequence { chain });
        }
        chain.push(p0.derivative().primitive_part_signed());
        loop {
            let n = chain.len();
            let r = chain[n - 2].signed_pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-r).primitive_part_signed());
        }
        Ok(SturmSequence { chain })
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    pub fn variations(&self, x: &Rational) -> usize {
        count_variations(self.chain.iter().map(|q| q.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_variations(self.chain.iter().map(|q| {
            let s = q.leading().sign();
            let flip = !positive && q.deg() % 2 == 1;
            match (s, flip) {
                (num_bigint::Sign::Plus, false) | (num_bigint::Sign::Minus, true) => Ordering::Greater,
                (num_bigint::Sign::Minus, false) | (num_bigint::Sign::Plus, true) => Ordering::Less,
                _ => Ordering::Equal,
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a) - self.variations(b)
    }

    /// Number of distinct real roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &Rational, b: &Rational) -> usize {
        if a > b {
            return 0;
        }
        let at_a = usize::from(self.chain[0].sign_at(a) == Ordering::Equal);
        self.count_half_open(a, b) + at_a
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Disjoint isolating intervals for every real root, in increasing order.
    /// Rational roots are returned as degenerate intervals `[r, r]`.
    pub fn isolate(&self) -> Vec<Interval> {
        if self.chain[0].deg() == 0 {
            return Vec::new();
        }
        let bound = cauchy_bound(&self.chain[0]);
        self.isolate_in(&-bound.clone(), &bound)
    }

    /// Isolating intervals for the roots in `(a, b]`.
    pub fn isolate_in(&self, a: &Rational, b: &Rational) -> Vec<Interval> {
        let p = &self.chain[0];
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone(), self.count_half_open(a, b))];
        while let Some((lo, hi, count)) = stack.pop() {
            match count {
                0 => {}
                1 => out.push(self.single_root_interval(lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / Rational::from_integer(2.into());
                    let left = self.count_half_open(&lo, &mid);
                    stack.push((mid.clone(), hi, count - left));
                    stack.push((lo, mid, left));
                }
            }
        }
        debug_assert!(out.iter().all(|iv| iv.is_point() || p.sign_at(&iv.lo) != Ordering::Equal));
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    /// `(lo, hi]` holds exactly one root; returns an interval isolating it whose
    /// endpoints are not roots, or a point interval when the root is rational.
    fn single_root_interval(&self, mut lo: Rational, mut hi: Rational) -> Interval {
        let p = &self.chain[0];
        if p.sign_at(&hi) == Ordering::Equal {
            return Interval::point(hi);
        }
        let two = Rational::from_integer(2.into());
        while p.sign_at(&lo) == Ordering::Equal {
            let mid = (&lo + &hi) / &two;
            if p.sign_at(&mid) == Ordering::Equal {
                return Interval::point(mid);
            }
            if self.count_half_open(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Interval { lo, hi }
    }
}

impl IntPolynomial {
    /// Divides by the content, keeping the sign of the leading coefficient.
    pub(crate) fn primitive_part_signed(&self) -> IntPolynomial {
        let pp = self.primitive_part();
        if self.leading().is_negative() {
            -pp
        } else {
            pp
        }
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Strict bound on the absolute value of every root: `1 + max |c_i / c_n|`.
pub(crate) fn cauchy_bound(p: &IntPolynomial) -> Rational {
    let lc = p.leading().abs();
    let max = p.coeffs()[..p.deg()].iter().map(|c| c.abs()).max().unwrap_or_default();
    Rational::one() + Rational::new(max, lc)
}

/// Isolating intervals of all distinct real roots of `p`, in increasing order.
pub fn sturm_isolate(p: &IntPolynomial, range: Option<(&Rational, &Rational)>) -> Result<Vec<Interval>> {
    let seq = SturmSequence::new(p)?;
    let Some((a, b)) = range else { return Ok(seq.isolate()) };
    if a >= b {
        return Ok(Vec::new());
    }
    // open interval: a root at b comes back as the point interval [b, b]
    let mut out = seq.isolate_in(a, b);
    out.retain(|iv| !(iv.is_point() && &iv.lo == b));
    Ok(out)
}

/// Bisects an isolating interval of a simple root of the squarefree `p` until its
/// width is at most `width`. Point intervals are returned unchanged.
pub(crate) fn refine_root(p: &IntPolynomial, iv: &Interval, width: &Rational) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let s_lo = p.sign_at(&lo);
    debug_assert!(s_lo != Ordering::Equal && p.sign_at(&hi) != s_lo, "not an isolating interval");
    let two = Rational::from_integer(2.into());
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s = p.sign_at(&mid);
        if s == Ordering::Equal {
            return Interval::point(mid);
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval { lo, hi }
}

/// One bisection step on an isolating interval.
pub(crate) fn bisect_root(p: &IntPolynomial, iv: &Interval) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let mid = iv.midpoint();
    let s = p.sign_at(&mid);
    if s == Ordering::Equal {
        Interval::point(mid)
    } else if s == p.sign_at(&iv.lo) {
        Interval { lo: mid, hi: iv.hi.clone() }
    } else {
        Interval { lo: iv.lo.clone(), hi: mid }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn counts_and_isolates() {
        // (x^2 - 2)(x - 1/2)(x + 3)
        let p = &(&IntPolynomial::from_i64(&[-2, 0, 1]) * &IntPolynomial::from_i64(&[-1, 2]))
            * &IntPolynomial::from_i64(&[3, 1]);
        let s = SturmSequence::new(&p).unwrap();
        assert_eq!(s.count_real(), 4);
        let roots = s.isolate();
        assert_eq!(roots.len(), 4);
        assert!(roots[0].contains(&rat(-3, 1)));
        assert!(roots[2].contains(&rat(1, 2)));
        assert!(roots.windows(2).all(|w| w[0].hi <= w[1].lo));
        let r = refine_root(s.polynomial(), &roots[3], &rat(1, 1_000_000));
        assert!((r.approx() - 2f64.sqrt()).abs() < 1e-6);
        let r = refine_root(s.polynomial(), &roots[1], &rat(1, 1_000_000));
        assert!((r.approx() + 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn repeated_and_rootless() {
        let p = &IntPolynomial::from_i64(&[1, 0, 1]) * &IntPolynomial::from_i64(&[1, -2, 1]);
        let roots = sturm_isolate(&p, None).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&rat(1, 1)));
        assert!(sturm_isolate(&IntPolynomial::from_i64(&[5]), None).unwrap().is_empty());
        assert_eq!(sturm_isolate(&IntPolynomial::zero(), None), Err(Error::UndefinedRootSet));
    }

    #[test]
    fn closed_counts_include_endpoints() {
        let s = SturmSequence::new(&IntPolynomial::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(s.count_closed(&rat(-1, 1), &rat(1, 1)), 2);
        assert_eq!(s.count_half_open(&rat(-1, 1), &rat(1, 1)), 1);
    }

    #[test]
    fn open_range_excludes_endpoints() {
        // s^4 - 3 s^2 + 1 has roots +-0.618 and +-1.618
        let p = IntPolynomial::from_i64(&[1, 0, -3, 0, 1]);
        let roots = sturm_isolate(&p, Some((&rat(-1, 1), &rat(1, 1)))).unwrap();
        assert_eq!(roots.len(), 2);
        let fine: Vec<f64> = roots.iter().map(|iv| refine_root(&p, iv, &rat(1, 10_000)).approx()).collect();
        assert!((fine[0] + 0.618).abs() < 0.001 && (fine[1] - 0.618).abs() < 0.001);
        let q = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert!(sturm_isolate(&q, Some((&rat(-1, 1), &rat(1, 1)))).unwrap().is_empty());
        assert_eq!(sturm_isolate(&q, Some((&rat(-1, 1), &rat(2, 1)))).unwrap().len(), 1);
    }
}
