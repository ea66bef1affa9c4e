//! Independent re-verification of audit certificates from their JSON form. Nothing here
//! calls the step constructors: every fact is recomputed from the recorded inputs.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::encode::{entry_from_str, field, matrix_from_json, poly_from_json, rational_field};
use crate::algebra::{
    divisors, eliminate, int, parse_rational, parse_real, rat, AlgebraicReal, BiPoly, IntPolynomial, MPoly, Rational,
};
use crate::error::{Error, Result};
use crate::fiedler::symbolic::{constant, integer, var};
use crate::trig::cosine_minpoly;

fn reduce(p: &MPoly) -> Result<MPoly> {
    p.reduce_golden("g")
}

/// Leibniz expansion over all permutations.
fn leibniz(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    let mut total = integer(0);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let term = (0..n).fold(integer(1), |acc, i| acc.mul(&m[i][perm[i]]));
        total = if inversions % 2 == 0 { total.add(&term) } else { total.sub(&term) };
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn symmetric(m: &[Vec<MPoly>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.len() == m.len() && r.iter().enumerate().all(|(j, e)| *e == m[j][i]))
}

fn text<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| Error::Parse(format!("{key} must be a string")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(v, key)?.as_array().ok_or_else(|| Error::Parse(format!("{key} must be an array")))
}

fn uint(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?.as_u64().ok_or_else(|| Error::Parse(format!("{key} must be a nonnegative integer")))
}

fn algebraic(v: &Value) -> Result<AlgebraicReal> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("algebraic number: {e}")))
}

/// Re-verifies one serialized step. The recorded verdict must agree with the recomputation.
pub fn check_step(step: &Value) -> Result<bool> {
    let id = text(step, "id")?;
    let inputs = field(step, "inputs")?;
    let cert = field(step, "certificate")?;
    let verdict = text(step, "verdict")?;
    let outcome = match id {
        "rho-degree" => check_rho_degree(inputs, cert)?,
        "two-lengths" => check_two_lengths(inputs, cert)?,
        "tripod-determinant" => check_identity(cert)?,
        "path-determinant" => both(check_identity(cert)?, check_lambda1(cert)?),
        "multiples" => both(check_row_sum(cert)?, check_bookkeeping(cert)?),
        "path-complement" => check_row_sum(cert)?,
        "beta-constraints" => check_beta(inputs, cert)?,
        "bound-chain" => check_bound_chain(cert)?,
        "exclude-pi-over-5" => check_pi_over_5(cert)?,
        "final-cases" => check_final_cases(cert)?,
        other => return Err(Error::Parse(format!("unknown step id {other}"))),
    };
    Ok(match outcome {
        Outcome::Holds => verdict == "pass",
        Outcome::Inapplicable => verdict == "inapplicable",
        Outcome::Broken => false,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Holds,
    Inapplicable,
    Broken,
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    if a == Outcome::Holds && b == Outcome::Holds {
        Outcome::Holds
    } else {
        Outcome::Broken
    }
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::Holds
        } else {
            Outcome::Broken
        }
    }
}

fn cube_polynomial(k: u64) -> IntPolynomial {
    IntPolynomial::from_i64(&[-1, 0, 0, k as i64])
}

fn is_cube(k: u64) -> bool {
    (1..=k).take_while(|m| m * m * m <= k).any(|m| m * m * m == k)
}

/// `k x^3 - 1` has no rational root: by the rational root test only `+-1/q`, `q | k`, qualify.
fn cubic_irreducible(k: u64) -> bool {
    let p = cube_polynomial(k);
    divisors(&BigInt::from(k))
        .into_iter()
        .all(|q| [1, -1].iter().all(|&s| !p.eval(&Rational::new(BigInt::from(s), q.clone())).is_zero()))
}

fn check_rho_degree(inputs: &Value, cert: &Value) -> Result<Outcome> {
    let k = uint(inputs, "k")?;
    if k < 2 {
        return Ok(Outcome::Broken);
    }
    if is_cube(k) {
        return Ok(Outcome::Inapplicable);
    }
    let recorded = text(cert, "polynomial")? == cube_polynomial(k).to_string();
    Ok((recorded && cubic_irreducible(k)).into())
}

fn check_two_lengths(inputs: &Value, cert: &Value) -> Result<Outcome> {
    let k = uint(inputs, "k")?;
    let bound = uint(inputs, "bound")? as i64;
    if is_cube(k) {
        return Ok(Outcome::Inapplicable);
    }
    let enc = array(cert, "rho_enclosure")?;
    let lo = parse_rational(enc.first().and_then(Value::as_str).unwrap_or(""))?;
    let hi = parse_rational(enc.get(1).and_then(Value::as_str).unwrap_or(""))?;
    let p = cube_polynomial(k);
    // k x^3 - 1 is increasing, so a sign change brackets rho
    if !(lo.is_positive() && lo < hi && p.eval(&lo).is_negative() && p.eval(&hi).is_positive()) {
        return Ok(Outcome::Broken);
    }
    let mut systems = 0u64;
    let mut min: Option<Rational> = None;
    for n11 in 0..=bound {
        for n12 in 0..=bound {
            for n21 in 0..=bound {
                for n22 in 0..=bound {
                    if (n11, n12, n21, n22) == (0, 0, 0, 0) {
                        continue;
                    }
                    systems += 1;
                    let a = int(n11 * n22 - n12 * n21);
                    let b = int(n11 + n22);
                    // a r^2 - b r + 1 over r in [lo, hi], endpoint-wise since b >= 0
                    let (sq_lo, sq_hi) = (&lo * &lo, &hi * &hi);
                    let (alo, ahi) = if a.is_negative() { (&a * &sq_hi, &a * &sq_lo) } else { (&a * &sq_lo, &a * &sq_hi) };
                    let rlo = alo - &b * &hi + Rational::one();
                    let rhi = ahi - &b * &lo + Rational::one();
                    let gap = if rlo.is_positive() {
                        rlo
                    } else if rhi.is_negative() {
                        -rhi
                    } else {
                        Rational::zero()
                    };
                    if min.as_ref().is_none_or(|m| &gap < m) {
                        min = Some(gap);
                    }
                }
            }
        }
    }
    let claimed = rational_field(cert, "min_abs_residual_lower_bound")?;
    let min = min.unwrap_or_else(Rational::zero);
    let ok = uint(cert, "systems")? == systems && min.is_positive() && claimed <= min && cubic_irreducible(k);
    Ok(ok.into())
}

fn polys(v: &Value, key: &str) -> Result<Vec<MPoly>> {
    array(v, key)?.iter().map(poly_from_json).collect()
}

fn check_identity(cert: &Value) -> Result<Outcome> {
    let m = matrix_from_json(field(cert, "matrix")?)?;
    if !symmetric(&m) {
        return Ok(Outcome::Broken);
    }
    let scale = poly_from_json(field(cert, "scale")?)?;
    let factors = polys(cert, "factors")?;
    let product = factors.iter().fold(integer(1), |acc, f| acc.mul(f));
    let d = leibniz(&m);
    if !reduce(&scale.mul(&d).sub(&product))?.is_zero() {
        return Ok(Outcome::Broken);
    }
    let spots = array(cert, "spot_checks")?;
    if spots.len() < 20 {
        return Ok(Outcome::Broken);
    }
    for spot in spots {
        let s = rational_field(spot, "s")?;
        let t = rational_field(spot, "t")?;
        let at = |p: &MPoly| -> Result<MPoly> { p.substitute_rational("s", &s)?.substitute_rational("t", &t) };
        let numeric: Vec<Vec<MPoly>> = m.iter().map(|r| r.iter().map(at).collect::<Result<_>>()).collect::<Result<_>>()?;
        let num = leibniz(&numeric);
        if num != constant(rational_field(spot, "det")?) {
            return Ok(Outcome::Broken);
        }
        if !reduce(&scale.mul(&num).sub(&at(&product)?))?.is_zero() {
            return Ok(Outcome::Broken);
        }
    }
    Ok(Outcome::Holds)
}

fn check_lambda1(cert: &Value) -> Result<Outcome> {
    let m = matrix_from_json(field(cert, "matrix")?)?;
    let x = var("x");
    let shifted: Vec<Vec<MPoly>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, a)| if i == j { x.sub(a) } else { a.neg() }).collect())
        .collect();
    let cp = leibniz(&shifted);
    let lam = poly_from_json(field(field(cert, "lambda1")?, "value")?)?;
    Ok(reduce(&cp.substitute("x", &lam)?)?.is_zero().into())
}

/// `p` is `c (t - 1)` with `c > 0`, or zero.
fn nonpositive_multiple_of_t_minus_one(p: &MPoly) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let only_t = p.terms().keys().all(|mono| p.vars().iter().zip(mono).all(|(name, &e)| e == 0 || name == "t"));
    if !only_t || p.degree_in("t")? != 1 {
        return Ok(false);
    }
    let at_one = p.eval(&[("t", Rational::one())])?;
    let slope = p.eval(&[("t", int(2))])? - p.eval(&[("t", Rational::one())])?;
    Ok(at_one.is_zero() && slope.is_positive())
}

fn check_row_sum(cert: &Value) -> Result<Outcome> {
    let m = matrix_from_json(field(cert, "matrix")?)?;
    if !symmetric(&m) {
        return Ok(Outcome::Broken);
    }
    let coefficients: Vec<i64> = array(cert, "coefficients")?.iter().filter_map(Value::as_i64).collect();
    if coefficients.len() != m.len() || coefficients.iter().any(|c| c.is_negative()) || coefficients.iter().all(|&c| c == 0) {
        return Ok(Outcome::Broken);
    }
    let expected: Vec<MPoly> =
        array(cert, "expected")?.iter().map(|e| entry_or_poly(e.as_str().unwrap_or(""))).collect::<Result<_>>()?;
    let mut any_nonzero = false;
    for j in 0..m.len() {
        let sum = (0..m.len()).fold(integer(0), |acc, i| acc.add(&m[i][j].scale(&int(coefficients[i]))));
        if sum != expected[j] || !nonpositive_multiple_of_t_minus_one(&sum)? {
            return Ok(Outcome::Broken);
        }
        any_nonzero |= !sum.is_zero();
    }
    Ok(any_nonzero.into())
}

/// Entries such as `t - 1` in addition to the plain forms.
fn entry_or_poly(s: &str) -> Result<MPoly> {
    if let Ok(p) = entry_from_str(s) {
        return Ok(p);
    }
    match s.replace(' ', "").as_str() {
        "t-1" => Ok(var("t").sub(&integer(1))),
        "-t+1" | "1-t" => Ok(integer(1).sub(&var("t"))),
        other => Err(Error::Parse(format!("unsupported entry {other}"))),
    }
}

fn check_bookkeeping(cert: &Value) -> Result<Outcome> {
    for row in array(cert, "bookkeeping")? {
        let n = field(row, "n")?.as_i64().ok_or_else(|| Error::Parse("n".into()))?;
        let claimed: Vec<i64> = array(row, "feasible_m")?.iter().filter_map(Value::as_i64).collect();
        // 2/n + m/n > 1 iff m > n - 2
        let feasible: Vec<i64> = (1..n).filter(|m| 2 + m > n).collect();
        if claimed != feasible || feasible != [n - 1] {
            return Ok(Outcome::Broken);
        }
    }
    Ok(Outcome::Holds)
}

fn check_beta(inputs: &Value, cert: &Value) -> Result<Outcome> {
    let range = array(inputs, "range")?;
    let hi = range.get(1).and_then(Value::as_i64).unwrap_or(0);
    let cases = array(cert, "cases")?;
    if cases.len() as i64 != hi * hi {
        return Ok(Outcome::Broken);
    }
    for case in cases {
        let n1 = field(case, "n1")?.as_i64().unwrap_or(0);
        let n2 = field(case, "n2")?.as_i64().unwrap_or(0);
        match text(case, "status")? {
            "excluded" => {
                // (a, b) <= (n1, n2) coefficientwise makes a beta1 + b beta2 <= pi
                let (a, b) = match text(case, "violated")? {
                    "2 beta1 + beta2 > pi" => (2, 1),
                    "beta1 + 2 beta2 > pi" => (1, 2),
                    _ => return Ok(Outcome::Broken),
                };
                if !(a <= n1 && b <= n2) {
                    return Ok(Outcome::Broken);
                }
            }
            "survives" => {
                let w = array(case, "witness")?;
                let x = parse_rational(w.first().and_then(Value::as_str).unwrap_or(""))?;
                let y = parse_rational(w.get(1).and_then(Value::as_str).unwrap_or(""))?;
                let ok = (n1, n2) == (1, 1)
                    && x.is_positive()
                    && y.is_positive()
                    && &x + &y == int(1)
                    && &x + &y * int(2) > int(1)
                    && &x * int(2) + &y > int(1);
                if !ok {
                    return Ok(Outcome::Broken);
                }
            }
            _ => return Ok(Outcome::Broken),
        }
    }
    // both <= 1/3 gives beta1 + 2 beta2 <= 1 (in units of pi)
    let third = rat(1, 3);
    Ok((&third + &third * int(2) <= int(1)).into())
}

fn golden() -> Result<AlgebraicReal> {
    Ok(AlgebraicReal::sqrt_rational(&int(5))?.add_rational(&int(1)).mul_rational(&rat(1, 2)))
}

fn check_bound_chain(cert: &Value) -> Result<Outcome> {
    let phi = golden()?;
    let expected = phi.square()?.mul_rational(&int(2)).recip()?.sub(&phi.recip()?)?;
    let sb = field(cert, "s_bound")?;
    let value = algebraic(field(sb, "value")?)?;
    let enc = array(sb, "enclosure")?;
    let lo = parse_rational(enc.first().and_then(Value::as_str).unwrap_or(""))?;
    let hi = parse_rational(enc.get(1).and_then(Value::as_str).unwrap_or(""))?;
    let inside = AlgebraicReal::from_rational(lo.clone()) <= value && value <= AlgebraicReal::from_rational(hi.clone());
    let window = lo > rat(-428, 1000) && hi < rat(-427, 1000);
    // arccos is decreasing, so s > -1/2 = cos(2 pi/3) gives arccos s < 2 pi/3
    let above = value > AlgebraicReal::from_rational(rat(-1, 2));
    // 2 beta1 > pi - beta2 > pi/3 gives beta1 > pi/6; beta1 = pi/n with n >= 3
    let ns: Vec<i64> = (3..=64).filter(|&n| rat(1, n) > rat(1, 6)).collect();
    let claimed: Vec<i64> = array(cert, "n_values")?.iter().filter_map(Value::as_i64).collect();
    Ok((value == expected && inside && window && above && ns == claimed && claimed == [3, 4, 5]).into())
}

fn check_pi_over_5(cert: &Value) -> Result<Outcome> {
    let phi = golden()?;
    let t = phi.mul_rational(&rat(1, 2));
    // cos(pi/5) is the positive root of 4x^2 - 2x - 1
    let t_ok = IntPolynomial::from_i64(&[-1, -2, 4]).eval_interval(&t.enclosure(&rat(1, 1 << 30))).contains_zero()
        && t.minpoly() == &IntPolynomial::from_i64(&[-1, -2, 4])
        && t > AlgebraicReal::from_rational(rat(4, 5));
    // cos(3 pi/5) is the negative root of the same quadratic, and equals -1/(2 phi)
    let s = phi.mul_rational(&int(2)).recip()?.neg();
    let s_ok = s.minpoly() == &IntPolynomial::from_i64(&[-1, -2, 4]) && s.sign() == std::cmp::Ordering::Less;
    let lam = poly_from_json(field(cert, "lambda1_at_t")?)?;
    let boundary = var("g").sub(&integer(1)).scale(&rat(-1, 2));
    let at_boundary = reduce(&lam.substitute("s", &boundary)?)?;
    let coeffs = lam.coefficients_in("s")?;
    let slope = coeffs.get(1).cloned().unwrap_or_else(|| integer(0));
    let decreasing = reduce(&slope.add(&var("g")))?.is_zero() && lam.degree_in("s")? == 1;
    // the recorded lambda1 must be -g s + t/g - 1 at t = g/2
    let direct = var("g")
        .mul(&var("s"))
        .neg()
        .add(&var("g").scale(&rat(1, 2)).mul(&var("g").sub(&integer(1))))
        .sub(&integer(1));
    let same = reduce(&lam.sub(&direct))?.is_zero();
    Ok((t_ok && s_ok && at_boundary.is_zero() && decreasing && same).into())
}

/// The path determinant, rebuilt from its Leibniz expansion.
fn path_det() -> MPoly {
    let (s, t) = (var("s"), var("t"));
    let e = integer(-1);
    let m = vec![
        vec![e.clone(), t.clone(), s.clone(), s.clone()],
        vec![t.clone(), e.clone(), t.clone(), s.clone()],
        vec![s.clone(), t.clone(), e.clone(), t.clone()],
        vec![s.clone(), s, t, e],
    ];
    leibniz(&m)
}

/// `d` as a polynomial in `t` with coefficients in `Z[s]`; `d` must have integer coefficients.
fn path_bipoly(d: &MPoly) -> Result<BiPoly> {
    let mut rows = Vec::new();
    for c in d.coefficients_in("t")? {
        let coeffs: Vec<BigInt> = c.coefficients_in("s")?.iter().map(|p| p.eval(&[]).map(|r| r.to_integer())).collect::<Result<_>>()?;
        rows.push(IntPolynomial::new(coeffs));
    }
    Ok(BiPoly::new(rows))
}

fn cosine_minpolys() -> Vec<IntPolynomial> {
    (1..=60u64).map(cosine_minpoly).collect()
}

fn check_final_cases(cert: &Value) -> Result<Outcome> {
    if text(cert, "assumption").map_or(true, str::is_empty) {
        return Ok(Outcome::Broken);
    }
    let d = path_det();
    if d.coefficients_in("s")?.iter().any(|c| c.coefficients_in("t").is_err()) {
        return Ok(Outcome::Broken);
    }
    let integral = d.terms().values().all(|c| c.is_integer());
    let bipoly = path_bipoly(&d)?;
    let catalog = cosine_minpolys();
    let cases = array(cert, "cases")?;
    if cases.len() != 3 {
        return Ok(Outcome::Broken);
    }
    let minus_one = AlgebraicReal::from_integer(-1);
    for case in cases {
        let t = parse_real(text(case, "t")?)?;
        let eliminant = eliminate(&bipoly, &t)?;
        if eliminant.is_zero() {
            return Ok(Outcome::Broken);
        }
        let roots = array(case, "roots")?;
        if roots.len() != 2 || uint(case, "roots_in_open_unit_interval")? != 2 {
            return Ok(Outcome::Broken);
        }
        let mut seen: Vec<AlgebraicReal> = Vec::new();
        for r in roots {
            let z = algebraic(field(r, "value")?)?;
            let in_range = z > minus_one && z < AlgebraicReal::one();
            let divides = eliminant.div_exact(z.minpoly()).is_some();
            let expected: f64 = text(r, "expected")?.parse().map_err(|_| Error::Parse("expected decimal".into()))?;
            let close = (z.to_f64() - expected).abs() <= 1e-3;
            let not_cosine = catalog.iter().all(|c| c != z.minpoly() && c.primitive_part() != z.minpoly().primitive_part());
            let genuine = vanishes_at(&d, &z, &t)?;
            if !(in_range && divides && close && not_cosine && genuine) || seen.contains(&z) {
                return Ok(Outcome::Broken);
            }
            seen.push(z);
        }
        // no further root of the eliminant in (-1, 1) is a genuine root at this t
        for c in AlgebraicReal::real_roots(&eliminant)? {
            if c > minus_one && c < AlgebraicReal::one() && !seen.contains(&c) && vanishes_at(&d, &c, &t)? {
                return Ok(Outcome::Broken);
            }
        }
    }
    Ok(integral.into())
}

/// Sign of `q(z)` for a rational polynomial `q`; zero exactly when the minimal
/// polynomial of `z` divides `q`.
fn sign_at(q: &[Rational], z: &AlgebraicReal) -> Ordering {
    let q = IntPolynomial::from_rationals(q);
    if q.is_zero() || q.gcd(z.minpoly()).deg() > 0 {
        return Ordering::Equal;
    }
    let mut width = rat(1, 16);
    loop {
        let v = q.eval_interval(&z.enclosure(&width));
        if v.lo.is_positive() {
            return Ordering::Greater;
        }
        if v.hi.is_negative() {
            return Ordering::Less;
        }
        width /= int(16);
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); (a.len() + b.len()).saturating_sub(1)];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Whether `d(z, t) = 0` exactly, for `t` with `t^2` rational. Writing
/// `d = A(s) + t B(s)`, this is `A(z) = B(z) = 0` or `A(z)^2 = t^2 B(z)^2` with
/// `A(z)` and `t B(z)` of opposite signs.
fn vanishes_at(d: &MPoly, z: &AlgebraicReal, t: &AlgebraicReal) -> Result<bool> {
    let q = t.square()?.to_rational().ok_or_else(|| Error::Invalid(format!("{t} has irrational square")))?;
    let by_s = d.coefficients_in("s")?;
    let mut a = vec![Rational::zero(); by_s.len()];
    let mut b = vec![Rational::zero(); by_s.len()];
    for (k, c) in by_s.iter().enumerate() {
        for (j, p) in c.coefficients_in("t")?.iter().enumerate() {
            let coeff = p.eval(&[])? * num_traits::pow(q.clone(), j / 2);
            if j % 2 == 0 {
                a[k] += coeff;
            } else {
                b[k] += coeff;
            }
        }
    }
    let sa = sign_at(&a, z);
    let sb = sign_at(&b, z);
    if sa == Ordering::Equal && sb == Ordering::Equal {
        return Ok(true);
    }
    if t.is_zero() {
        return Ok(sa == Ordering::Equal);
    }
    let norm: Vec<Rational> = {
        let a2 = poly_mul(&a, &a);
        let b2 = poly_mul(&b, &b);
        a2.iter().zip(b2.iter()).map(|(x, y)| x - y * &q).collect()
    };
    let tb = if t.sign() == Ordering::Less { sb.reverse() } else { sb };
    Ok(sign_at(&norm, z) == Ordering::Equal && sa == tb.reverse())
}

/// Checks every step of a serialized report and its conclusion.
pub fn check_report(report: &Value) -> Result<bool> {
    let steps = array(report, "steps")?;
    let mut all = true;
    for s in steps {
        all &= check_step(s)? && text(s, "verdict")? == "pass";
    }
    let conclusion = text(report, "conclusion")?;
    Ok(if conclusion == super::EXCLUDED { all && !steps.is_empty() } else { true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn leibniz_matches_elimination() {
        let d = path_det();
        let e = crate::fiedler::symbolic::det(&crate::fiedler::symbolic::path_matrix()).unwrap();
        assert_eq!(d, e);
        let mut p = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn cube_and_irreducibility() {
        assert!(is_cube(8) && is_cube(27) && !is_cube(9));
        assert!(cubic_irreducible(2) && cubic_irreducible(7));
        assert!(!cubic_irreducible(8));
        let step = json!({"id": "rho-degree", "inputs": {"k": 8}, "certificate": {}, "verdict": "inapplicable"});
        assert!(check_step(&step).unwrap());
        let lying = json!({"id": "rho-degree", "inputs": {"k": 8}, "certificate": {}, "verdict": "pass"});
        assert!(!check_step(&lying).unwrap());
    }
}
