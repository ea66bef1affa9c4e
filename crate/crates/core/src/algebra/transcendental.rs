//! Certified enclosures of pi, arctangent and arccosine with rational endpoints,
//! and a sign decider that refines until an enclosure excludes zero.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ceil_dyadic, floor_dyadic, parse_rational, rat, sqrt_bounds, AlgebraicReal, Interval, Rational};
use crate::error::{Error, Result};

/// Environment variable holding the starting refinement width, e.g. `1e-6` or `1/1000`.
pub const PRECISION_ENV: &str = "REPTILE_FORGE_PRECISION";

/// Narrowest width the sign decider will try before giving up.
pub fn width_cap() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10).pow(30))
}

/// Starting width for certified comparisons: `1e-4` unless overridden by the environment.
pub fn start_width() -> Rational {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|s| parse_rational(&s).ok())
        .filter(|w| w.is_positive())
        .unwrap_or_else(|| rat(1, 10_000))
}

fn bits_for(width: &Rational) -> u32 {
    // smallest b with 2^-b <= width
    let mut b = 0u32;
    let mut scale = Rational::one();
    while &scale > width {
        scale /= Rational::from_integer(2.into());
        b += 1;
    }
    b
}

fn outward(lo: Rational, hi: Rational, bits: u32) -> Interval {
    Interval { lo: floor_dyadic(&lo, bits), hi: ceil_dyadic(&hi, bits) }
}

/// Alternating arctangent series for `|x| <= 1/2` in fixed point with `bits + 8`
/// fractional bits; every truncation error is accounted for in the result.
fn atan_series(x: &Rational, bits: u32) -> Interval {
    if x.is_zero() {
        return Interval::point(Rational::zero());
    }
    if x.is_negative() {
        return -&atan_series(&-x, bits);
    }
    let frac = bits as usize + 8;
    let one = BigInt::one() << frac;
    let (a, b) = (x.numer().clone(), x.denom().clone());
    let (a2, b2) = (&a * &a, &b * &b);
    // power approximates x^(2k+1) 2^frac from below, off by less than one unit
    let mut power = (&one * &a) / &b;
    let mut sum = BigInt::zero();
    let mut terms: i64 = 0;
    let mut k: i64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        terms += 1;
        power = (&power * &a2) / &b2;
        k += 1;
    }
    // truncations cost at most two units per term, the dropped tail at most one more
    let slack = BigInt::from(2 * terms + 2);
    let den = Rational::from_integer(one);
    outward(
        Rational::from_integer(&sum - &slack) / &den,
        Rational::from_integer(&sum + &slack) / &den,
        bits + 2,
    )
}

const PI_CACHE_BITS: u32 = 480;

fn pi_machin(bits: u32) -> Interval {
    let b = bits + 5;
    let a5 = atan_series(&rat(1, 5), b);
    let a239 = atan_series(&rat(1, 239), b);
    let sixteen = Interval::point(Rational::from_integer(16.into()));
    let four = Interval::point(Rational::from_integer(4.into()));
    &(&sixteen * &a5) - &(&four * &a239)
}

/// Enclosure of pi with width at most about `2^-bits`.
pub fn pi_enclosure(bits: u32) -> Interval {
    static CACHE: std::sync::OnceLock<Interval> = std::sync::OnceLock::new();
    if bits + 4 > PI_CACHE_BITS {
        return pi_machin(bits);
    }
    let cached = CACHE.get_or_init(|| pi_machin(PI_CACHE_BITS));
    outward(cached.lo.clone(), cached.hi.clone(), bits + 2)
}

/// Enclosure of `atan(x)` for rational `x`.
pub fn atan_enclosure(x: &Rational, bits: u32) -> Interval {
    if x.is_negative() {
        return -&atan_enclosure(&-x, bits);
    }
    let one = Rational::one();
    if x > &one {
        let half_pi = &pi_enclosure(bits + 2) * &Interval::point(rat(1, 2));
        return &half_pi - &atan_enclosure(&x.recip(), bits + 2);
    }
    if x > &rat(1, 2) {
        let quarter_pi = &pi_enclosure(bits + 2) * &Interval::point(rat(1, 4));
        let reduced = (x - &one) / (x + &one);
        return &quarter_pi + &atan_series(&reduced, bits + 2);
    }
    atan_series(x, bits)
}

/// Enclosure of `arccos(r)` for rational `r` in `[-1, 1]`.
pub fn arccos_rational(r: &Rational, bits: u32) -> Result<Interval> {
    let one = Rational::one();
    if r.abs() > one {
        return Err(Error::Domain(format!("arccos argument {r} outside [-1, 1]")));
    }
    if r.is_one() {
        return Ok(Interval::point(Rational::zero()));
    }
    if r.is_zero() {
        return Ok(&pi_enclosure(bits + 1) * &Interval::point(rat(1, 2)));
    }
    if r.is_negative() {
        return Ok(&pi_enclosure(bits + 1) - &arccos_rational(&-r, bits + 1)?);
    }
    // arccos r = atan(sqrt(1 - r^2) / r), increasing in the square root
    let (s_lo, s_hi) = sqrt_bounds(&(&one - r * r), bits + 4 + bits_for(r));
    let lo = atan_enclosure(&(s_lo / r), bits + 2).lo;
    let hi = atan_enclosure(&(s_hi / r), bits + 2).hi;
    Ok(Interval { lo, hi })
}

/// Enclosure of `arccos` over an interval, clamped to `[-1, 1]`.
pub fn arccos_interval(c: &Interval, bits: u32) -> Result<Interval> {
    let one = Rational::one();
    if c.lo > one || c.hi < -&one {
        return Err(Error::Domain(format!("arccos argument {c} outside [-1, 1]")));
    }
    let lo = if c.lo < -&one { -&one } else { c.lo.clone() };
    let hi = if c.hi > one { one } else { c.hi.clone() };
    Ok(Interval { lo: arccos_rational(&hi, bits)?.lo, hi: arccos_rational(&lo, bits)?.hi })
}

/// Enclosure of `arccos(x)` of width at most `width` for an exact `x` in `[-1, 1]`.
pub fn arccos(x: &AlgebraicReal, width: &Rational) -> Result<Interval> {
    let one = AlgebraicReal::one();
    if x > &one || x < &one.neg() {
        return Err(Error::Domain(format!("arccos argument {x} outside [-1, 1]")));
    }
    if let Some(r) = x.to_rational() {
        return arccos_rational(&r, bits_for(width) + 1);
    }
    let bits = bits_for(width) + 1;
    let mut w = width.clone();
    for _ in 0..200 {
        let iv = arccos_interval(&x.enclosure(&w), bits)?;
        if &iv.width() <= width {
            return Ok(iv);
        }
        w /= Rational::from_integer(16.into());
    }
    Err(Error::Inconclusive(format!("arccos of {x} did not reach width {width}")))
}

/// Angle in degrees enclosing `arccos(x)`.
pub fn arccos_degrees(x: &AlgebraicReal, width: &Rational) -> Result<Interval> {
    let bits = bits_for(width) + 12;
    let rad = arccos(x, &Rational::new(BigInt::one(), BigInt::one() << bits as usize))?;
    let pi = pi_enclosure(bits);
    let deg = &rad * &Interval::point(Rational::from_integer(180.into()));
    deg.div(&pi)
}

/// Sign of a quantity given by an enclosure function `f(width)`: the width starts at
/// [`start_width`] and halves until the enclosure excludes zero, or an exact zero is
/// reported by a point enclosure. Gives up below [`width_cap`].
pub fn decide_sign<F>(mut f: F) -> Result<Ordering>
where
    F: FnMut(&Rational) -> Result<Interval>,
{
    let cap = width_cap();
    let mut width = start_width();
    while width >= cap {
        let iv = f(&width)?;
        if iv.lo.is_positive() {
            return Ok(Ordering::Greater);
        }
        if iv.hi.is_negative() {
            return Ok(Ordering::Less);
        }
        if iv.is_point() {
            return Ok(Ordering::Equal);
        }
        width /= Rational::from_integer(2.into());
    }
    Err(Error::Inconclusive(format!("no decision at interval width {}", super::fmt_rational(&cap))))
}

/// Sign of `arccos(a_1) + ... + arccos(a_k) - (p/q) pi`.
pub fn compare_arccos_sum(args: &[AlgebraicReal], pi_multiple: &Rational) -> Result<Ordering> {
    decide_sign(|w| {
        let k = Rational::from_integer(BigInt::from(args.len() as u64 + 1));
        let each = w / k;
        let bits = bits_for(&each);
        let mut acc = Interval::point(Rational::zero());
        for a in args {
            acc = &acc + &arccos(a, &each)?;
        }
        let pi = pi_enclosure(bits + pi_multiple.abs().ceil().to_integer().bits() as u32);
        Ok(&acc - &(&pi * &Interval::point(pi_multiple.clone())))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational_to_f64;

    fn approx(iv: &Interval) -> f64 {
        rational_to_f64(&iv.midpoint())
    }

    #[test]
    fn pi_digits() {
        let pi = pi_enclosure(100);
        let digits = Rational::new(BigInt::parse_bytes(b"314159265358979323846264338327950288", 10).unwrap(), BigInt::from(10).pow(35));
        let upper = &digits + Rational::new(BigInt::one(), BigInt::from(10).pow(35));
        assert!(pi.lo <= upper && pi.hi >= digits);
        assert!(pi_enclosure(100).width() < Rational::new(BigInt::one(), BigInt::one() << 98));
    }

    #[test]
    fn atan_and_arccos_values() {
        for x in [rat(-3, 1), rat(-1, 3), rat(0, 1), rat(2, 5), rat(3, 4), rat(1, 1), rat(7, 2)] {
            let iv = atan_enclosure(&x, 60);
            let expect = rational_to_f64(&x).atan();
            assert!((approx(&iv) - expect).abs() < 1e-14, "atan({x})");
            assert!(iv.width() < rat(1, 1 << 50));
        }
        for x in [rat(-1, 1), rat(-2, 3), rat(0, 1), rat(1, 3), rat(99, 100), rat(1, 1)] {
            let iv = arccos_rational(&x, 60).unwrap();
            assert!((approx(&iv) - rational_to_f64(&x).acos()).abs() < 1e-13, "arccos({x})");
        }
        assert!(arccos_rational(&rat(3, 2), 10).is_err());
    }

    #[test]
    fn arccos_of_algebraic() {
        let half_sqrt2 = AlgebraicReal::sqrt_rational(&rat(1, 2)).unwrap();
        let iv = arccos_degrees(&half_sqrt2, &rat(1, 1_000_000)).unwrap();
        assert!(iv.contains(&Rational::from_integer(45.into())));
        assert!(iv.width() < rat(1, 1000));
    }

    #[test]
    fn arccos_sums_against_pi() {
        let third = AlgebraicReal::from_rational(rat(1, 3));
        let args = vec![third.clone(), third.clone(), third];
        assert_eq!(compare_arccos_sum(&args, &Rational::one()).unwrap(), Ordering::Greater);
        let half = AlgebraicReal::from_rational(rat(1, 2));
        assert_eq!(compare_arccos_sum(&[half.clone(), half], &Rational::one()).unwrap(), Ordering::Less);
    }

    #[test]
    fn undecidable_equality_reports_inconclusive() {
        let zero = AlgebraicReal::zero();
        let r = compare_arccos_sum(&[zero.clone(), zero], &Rational::one());
        assert!(matches!(r, Err(Error::Inconclusive(_))));
    }
}
