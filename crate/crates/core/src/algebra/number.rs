use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Count of integers in `[1, n]` coprime to `n`, via trial-division factorization.
pub fn euler_totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("euler_totient is undefined at 0".into()));
    }
    let mut result = n;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    Ok(result)
}

/// Moebius function of a positive integer.
pub fn mobius(n: u64) -> i32 {
    assert!(n > 0, "mobius is undefined at 0");
    let mut rest = n;
    let mut sign = 1;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `|n|` in increasing order. `n` must be nonzero.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero");
    if let Some(small) = n.to_u64() {
        let mut low = Vec::new();
        let mut high = Vec::new();
        let mut d = 1u64;
        while d * d <= small {
            if small % d == 0 {
                low.push(d);
                if d != small / d {
                    high.push(small / d);
                }
            }
            d += 1;
        }
        high.reverse();
        return low.into_iter().chain(high).map(BigInt::from).collect();
    }
    // prime factorization by trial division, then expand
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

pub fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Integer cube root of `n >= 0` if `n` is a perfect cube.
pub fn integer_cube_root(n: u64) -> Option<u64> {
    let r = n.cbrt();
    (r * r * r == n).then_some(r)
}

pub fn is_perfect_cube(n: u64) -> bool {
    integer_cube_root(n).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn totient_by_count(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_totient(1).unwrap(), 1);
        assert_eq!(euler_totient(12).unwrap(), 4);
        assert_eq!(euler_totient(5).unwrap(), 4);
        assert!(euler_totient(0).is_err());
    }

    #[test]
    fn totient_matches_direct_count() {
        for n in 1..=500 {
            assert_eq!(euler_totient(n).unwrap(), totient_by_count(n), "n = {n}");
        }
    }

    #[test]
    fn divisors_small_and_large() {
        let d: Vec<i64> = divisors(&BigInt::from(-12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        let big = BigInt::from(u64::MAX) * BigInt::from(6);
        let ds = divisors(&big);
        assert!(ds.iter().all(|d| (&big % d).is_zero()));
        assert_eq!(ds.first().unwrap(), &BigInt::one());
        assert_eq!(ds.last().unwrap(), &big);
    }

    #[test]
    fn cubes() {
        assert!(is_perfect_cube(8));
        assert!(is_perfect_cube(27));
        assert!(!is_perfect_cube(7));
        assert_eq!(integer_cube_root(64), Some(4));
        assert_eq!(perfect_square_root(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(perfect_square_root(&BigInt::from(50)), None);
    }
}
