use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{PolyP, Zp};
use super::number::{divisors, perfect_square_root};
use super::{IntPolynomial, Rational};
use crate::error::{Error, Result};

const CANDIDATE_PRIMES: usize = 5;

/// Irreducible factorization over the rationals: primitive factors with positive
/// leading coefficients and their multiplicities, sorted by degree then coefficients.
pub fn factor(p: &IntPolynomial) -> Result<Vec<(IntPolynomial, usize)>> {
    if p.is_zero() {
        return Err(Error::UndefinedRootSet);
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in zassenhaus(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    Ok(out)
}

/// Distinct irreducible factors of the squarefree part of `p`.
pub fn factor_squarefree(p: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    if p.is_zero() {
        return Err(Error::UndefinedRootSet);
    }
    let mut out = zassenhaus(&p.squarefree_part());
    out.sort_by(poly_order);
    Ok(out)
}

/// Distinct rational roots in increasing order.
pub fn rational_roots(p: &IntPolynomial) -> Result<Vec<Rational>> {
    let mut roots: Vec<Rational> = factor_squarefree(p)?
        .into_iter()
        .filter(|f| f.deg() == 1)
        .map(|f| Rational::new(-f.coeff(0), f.coeff(1)))
        .collect();
    roots.sort();
    Ok(roots)
}

/// Irreducibility over the rationals for degree at most 4, by the rational root
/// test and an exhaustive search for quadratic factors. Independent of [`factor`].
pub fn is_irreducible(p: &IntPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::UndefinedRootSet);
    }
    let f = p.primitive_part();
    match f.deg() {
        0 => Ok(false),
        1 => Ok(true),
        2 | 3 => Ok(!has_rational_root(&f)),
        4 => Ok(!has_rational_root(&f) && !has_quadratic_factor(&f)),
        d => Err(Error::UnsupportedDegree(d)),
    }
}

fn poly_order(a: &IntPolynomial, b: &IntPolynomial) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

fn has_rational_root(f: &IntPolynomial) -> bool {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return true;
    }
    let lc = f.leading();
    for num in divisors(&c0) {
        for den in divisors(&lc) {
            if !num.gcd(&den).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let r = Rational::new(&num * sign, den.clone());
                if f.sign_at(&r).is_eq() {
                    return true;
                }
            }
        }
    }
    false
}

/// Searches `(p1 x^2 + q1 x + r1)(p2 x^2 + q2 x + r2)` equal to a primitive quartic
/// `a x^4 + b x^3 + c x^2 + d x + e` with `e != 0`.
fn has_quadratic_factor(f: &IntPolynomial) -> bool {
    let (e, d, c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3), f.coeff(4));
    let matches = |p1: &BigInt, q1: &BigInt, r1: &BigInt, p2: &BigInt, q2: &BigInt, r2: &BigInt| {
        let g = IntPolynomial::new(vec![r1.clone(), q1.clone(), p1.clone()]);
        let h = IntPolynomial::new(vec![r2.clone(), q2.clone(), p2.clone()]);
        &g * &h == *f
    };
    for p1 in divisors(&a) {
        let p2 = &a / &p1;
        for r1_abs in divisors(&e) {
            for r1 in [r1_abs.clone(), -r1_abs] {
                let r2 = &e / &r1;
                // x^3 and x coefficients: p2 q1 + p1 q2 = b, r2 q1 + r1 q2 = d
                let det = &p2 * &r1 - &p1 * &r2;
                if !det.is_zero() {
                    let n1 = &b * &r1 - &p1 * &d;
                    let n2 = &p2 * &d - &r2 * &b;
                    if !(&n1 % &det).is_zero() || !(&n2 % &det).is_zero() {
                        continue;
                    }
                    let (q1, q2) = (&n1 / &det, &n2 / &det);
                    if matches(&p1, &q1, &r1, &p2, &q2, &r2) {
                        return true;
                    }
                } else {
                    // q2 = (b - p2 q1) / p1 in the x^2 coefficient gives
                    // p2 q1^2 - b q1 + (c p1 - p1^2 r2 - p1 r1 p2) = 0
                    let k = &c * &p1 - &p1 * &p1 * &r2 - &p1 * &r1 * &p2;
                    let disc = &b * &b - BigInt::from(4) * &p2 * &k;
                    let Some(s) = perfect_square_root(&disc) else { continue };
                    for num in [&b + &s, &b - &s] {
                        let den = BigInt::from(2) * &p2;
                        if !(&num % &den).is_zero() {
                            continue;
                        }
                        let q1 = &num / &den;
                        let rest = &b - &p2 * &q1;
                        if !(&rest % &p1).is_zero() {
                            continue;
                        }
                        let q2 = &rest / &p1;
                        if matches(&p1, &q1, &r1, &p2, &q2, &r2) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Irreducible factors of a squarefree polynomial of positive degree.
fn zassenhaus(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let f = f.primitive_part();
    if f.deg() == 0 {
        return Vec::new();
    }
    if f.deg() == 1 {
        return vec![f];
    }
    let (zp, modular) = choose_prime(&f);
    if modular.len() == 1 {
        return vec![f];
    }
    let n = f.deg();
    let lc = f.leading();
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = super::number::isqrt(&norm_sq) + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let p = BigInt::from(zp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lifted = lift_all(f.coeffs(), &modular, &zp, k);
    recombine(f, lifted, &pk)
}

/// Picks the prime with the fewest modular factors among a handful of good primes.
fn choose_prime(f: &IntPolynomial) -> (Zp, Vec<PolyP>) {
    let mut best: Option<(Zp, Vec<PolyP>)> = None;
    let mut tried = 0;
    let mut candidate = 1u64;
    while tried < CANDIDATE_PRIMES {
        candidate += 2;
        if !is_prime(candidate) {
            continue;
        }
        let zp = Zp::new(candidate);
        let fp = reduce(f.coeffs(), &zp);
        if Zp::deg(&fp) != f.deg() || fp.len() != f.coeffs().len() {
            continue;
        }
        if Zp::deg(&zp.gcd(&fp, &zp.derivative(&fp))) != 0 {
            continue;
        }
        tried += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(candidate);
        let factors = zp.factor_squarefree(&zp.monic(&fp), &mut rng);
        if factors.len() == 1 {
            return (zp, factors);
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((zp, factors));
        }
    }
    best.expect("at least one prime tried")
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn reduce(coeffs: &[BigInt], zp: &Zp) -> PolyP {
    let p = BigInt::from(zp.p);
    zp.trim(coeffs.iter().map(|c| c.mod_floor(&p).to_u64().expect("reduced")).collect())
}

fn lift_poly(a: &PolyP) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn zmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    r
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.mod_floor(m).extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

/// Lifts `F = G H (mod p)` with `G` monic to the same identity mod `p^k`.
fn hensel_pair(f: &[BigInt], g0: &PolyP, h0: &PolyP, zp: &Zp, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, _s, t) = zp.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(zp.p);
    let mut g = lift_poly(g0);
    let mut h = lift_poly(h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let gh = zmul(&g, &h);
        let len = f.len().max(gh.len());
        let diff: Vec<BigInt> = (0..len)
            .map(|i| f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default())
            .collect();
        let e: PolyP = zp.trim(
            diff.iter()
                .map(|c| {
                    debug_assert!((c % &pj).is_zero());
                    (c / &pj).mod_floor(&p).to_u64().expect("reduced")
                })
                .collect(),
        );
        if !e.is_empty() {
            let dg = zp.rem(&zp.pmul(&e, &t), g0);
            let (dh, r) = zp.divrem(&zp.psub(&e, &zp.pmul(h0, &dg)), g0);
            debug_assert!(r.is_empty());
            add_scaled(&mut g, &dg, &pj);
            add_scaled(&mut h, &dh, &pj);
        }
        pj *= &p;
    }
    (zmod(&g, &pj), zmod(&h, &pj))
}

fn add_scaled(target: &mut Vec<BigInt>, delta: &PolyP, scale: &BigInt) {
    if target.len() < delta.len() {
        target.resize(delta.len(), BigInt::zero());
    }
    for (t, &d) in target.iter_mut().zip(delta) {
        *t += scale * BigInt::from(d);
    }
}

/// Lifts the monic modular factors of `f` to monic factors mod `p^k`.
fn lift_all(f: &[BigInt], factors: &[PolyP], zp: &Zp, k: u32) -> Vec<Vec<BigInt>> {
    let pk = num_traits::pow(BigInt::from(zp.p), k as usize);
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero polynomial");
        let inv = mod_inverse(lc, &pk);
        let scaled: Vec<BigInt> = f.iter().map(|c| c * &inv).collect();
        return vec![zmod(&scaled, &pk)];
    }
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(vec![1u64], |acc, q| zp.pmul(&acc, q));
    let lc_p = reduce(&[f.last().unwrap().clone()], zp)[0];
    let h0 = zp.scale(&factors[mid..].iter().fold(vec![1u64], |acc, q| zp.pmul(&acc, q)), lc_p);
    let (g, h) = hensel_pair(f, &g0, &h0, zp, k);
    let mut out = lift_all(&g, &factors[..mid], zp, k);
    out.extend(lift_all(&h, &factors[mid..], zp, k));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Tries products of lifted factors in increasing subset size.
fn recombine(mut f: IntPolynomial, mut lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<IntPolynomial> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), size) {
            let lc = f.leading();
            let prod = subset.iter().fold(vec![lc.clone()], |acc, &i| zmod(&zmul(&acc, &lifted[i]), pk));
            let g = IntPolynomial::new(symmetric(&prod, pk)).primitive_part();
            if g.deg() == 0 {
                continue;
            }
            if let Some(q) = f.div_exact(&g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                f = q.primitive_part();
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f.deg() > 0 {
        found.push(f);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn combinations_enumerate_all() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 1), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn factors_swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = poly(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f).unwrap(), vec![f.clone()]);
        assert!(is_irreducible(&f).unwrap());
    }

    #[test]
    fn factors_products() {
        let a = poly(&[-2, 0, 1]);
        let b = poly(&[1, 1, 1]);
        let c = poly(&[-1, 3]);
        let d = poly(&[5, 0, 0, 7]);
        let f = &(&(&a * &b) * &c) * &d;
        let got = factor_squarefree(&f).unwrap();
        assert_eq!(got, vec![c.clone(), a.clone(), b.clone(), d.clone()]);
        let g = &(&a * &a) * &c;
        assert_eq!(factor(&g).unwrap(), vec![(c.clone(), 1), (a.clone(), 2)]);
        assert_eq!(rational_roots(&f).unwrap(), vec![Rational::new(1.into(), 3.into())]);
    }

    #[test]
    fn quartic_quadratic_split_detected() {
        // (x^2 + x + 1)(3x^2 - x + 2)
        let f = &poly(&[1, 1, 1]) * &poly(&[2, -1, 3]);
        assert!(!is_irreducible(&f).unwrap());
        // (x^2 + 2)(x^2 + 3): determinant of the linear system vanishes
        let g = &poly(&[2, 0, 1]) * &poly(&[3, 0, 1]);
        assert!(!is_irreducible(&g).unwrap());
        assert!(is_irreducible(&poly(&[-2, 0, 0, 0, 1])).unwrap());
        assert_eq!(is_irreducible(&poly(&[1, 0, 0, 0, 0, 1])), Err(Error::UnsupportedDegree(5)));
    }

    #[test]
    fn cyclotomic_degree_eight() {
        // Phi_15 = x^8 - x^7 + x^5 - x^4 + x^3 - x + 1
        let phi15 = poly(&[1, -1, 0, 1, -1, 1, 0, -1, 1]);
        assert_eq!(factor_squarefree(&phi15).unwrap(), vec![phi15.clone()]);
        let x15 = poly(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let got = factor_squarefree(&x15).unwrap();
        let degrees: Vec<usize> = got.iter().map(|g| g.deg()).collect();
        assert_eq!(degrees, vec![1, 2, 4, 8]);
    }
}
