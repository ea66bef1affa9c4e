//! Exact number tower: big rationals, integer polynomials, Sturm root
//! isolation, factorization over the rationals and real algebraic numbers.

mod algebraic;
mod expr;
mod factor;
mod interval;
mod linalg;
mod modp;
mod mpoly;
mod number;
mod poly;
mod resultant;
mod sturm;
pub mod transcendental;

pub use algebraic::{AlgebraicReal, ArithOp, ARITH_DEGREE_CAP};
pub use expr::parse_real;
pub use factor::{factor, factor_squarefree, is_irreducible, rational_roots};
pub use interval::Interval;
pub use linalg::{
    determinant, identity, inverse, mat_mul, mat_vec, principal_minor_sums, rank, rational_determinant, solve, transpose, Field,
    RatMatrix,
};
pub use mpoly::{mpoly_determinant, MPoly, Monomial};
pub use number::{divisors, euler_totient, mobius, integer_cube_root, is_perfect_cube, isqrt, perfect_square_root};
pub use poly::IntPolynomial;
pub use resultant::{eliminate, resultant_in_y, BiPoly, ExtPolynomial};
pub use sturm::{sturm_isolate, SturmSequence};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, integers and plain decimals such as `"-0.125"` or `"1e-3"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    let all: BigInt = format!("0{whole}{frac}").parse().expect("digits only");
    let scale = exponent - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(all);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // numerator/denominator too large for a direct conversion
    let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
    let scaled_n = r.numer() >> shift.max(0) as usize;
    let scaled_d = r.denom() >> shift.max(0) as usize;
    let n = scaled_n.to_f64().unwrap_or(0.0);
    let d = scaled_d.to_f64().unwrap_or(1.0);
    if d == 0.0 {
        if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY }
    } else {
        n / d
    }
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Rounds `r` down to a multiple of 2^-bits.
pub fn floor_dyadic(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = (r * Rational::from_integer(scale.clone())).floor();
    scaled / Rational::from_integer(scale)
}

/// Rounds `r` up to a multiple of 2^-bits.
pub fn ceil_dyadic(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = (r * Rational::from_integer(scale.clone())).ceil();
    scaled / Rational::from_integer(scale)
}

/// Exact square root of a nonnegative rational when it is itself rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = perfect_square_root(r.numer())?;
    let d = perfect_square_root(r.denom())?;
    Some(Rational::new(n, d))
}

/// Rational bounds `lo <= sqrt(x) <= hi` with `hi - lo <= 2^-bits`, for `x >= 0`.
pub fn sqrt_bounds(x: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!x.is_negative(), "square root of a negative number");
    let scaled = x * Rational::from_integer(BigInt::one() << (2 * bits as usize));
    let s = scaled.floor().to_integer();
    let r = isqrt(&s);
    let den = BigInt::one() << bits as usize;
    let lo = Rational::new(r.clone(), den.clone());
    if scaled.is_integer() && &r * &r == s {
        return (lo.clone(), lo);
    }
    (lo, Rational::new(r + 1, den))
}
