use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::encode::{entry_to_string, matrix_to_json, poly_to_json};
use super::{AuditStep, Verdict};
use crate::algebra::transcendental::{arccos, pi_enclosure};
use crate::algebra::{
    divisors, fmt_rational, int, integer_cube_root, is_irreducible, parse_real, rat, rational_determinant, AlgebraicReal,
    ExtPolynomial, IntPolynomial, Interval, MPoly, Rational,
};
use crate::error::Result;
use crate::fiedler::symbolic::{
    self, char_poly, complement_matrix, det, identity_holds, lambda1, multiples_matrix, path_det_cleared, path_det_factored,
    path_matrix, reduce, row_combination, tripod_det_factored, tripod_matrix, var, SymMatrix,
};
use crate::trig::{catalog, certified_gap, cosine_of, match_rational_angle, RationalAngle};

pub const SPOT_CHECKS: usize = 20;
const SPOT_SEED: u64 = 0x7e7a_5eed;

/// Rational points `(s, t)` in `(-1, 1)^2`, the same on every run.
pub fn spot_points() -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SPOT_SEED);
    let draw = |rng: &mut ChaCha8Rng| {
        let q: i64 = rng.gen_range(2..=24);
        let p: i64 = rng.gen_range(1 - q..q);
        rat(p, q)
    };
    (0..SPOT_CHECKS).map(|_| (draw(&mut rng), draw(&mut rng))).collect()
}

/// Substitutes rational `s`, `t` into a symbolic matrix free of other symbols.
pub fn numeric_matrix(m: &[Vec<MPoly>], s: &Rational, t: &Rational) -> Result<Vec<Vec<Rational>>> {
    m.iter()
        .map(|r| r.iter().map(|e| e.eval(&[("s", s.clone()), ("t", t.clone())])).collect())
        .collect()
}

fn rho_polynomial(k: u64) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::from(-1), BigInt::zero(), BigInt::zero(), BigInt::from(k)])
}

/// `k x^3 - 1` has no rational root, hence is irreducible and `rho = k^(-1/3)` has degree 3.
pub fn rho_degree_step(k: u64) -> Result<AuditStep> {
    let inputs = json!({"k": k});
    let p = rho_polynomial(k);
    if let Some(m) = integer_cube_root(k) {
        return Ok(AuditStep::new(
            "rho-degree",
            format!("rho = {k}^(-1/3) is rational, so the degree argument does not apply"),
            inputs,
            json!({"polynomial": p.to_string(), "rational_root": format!("1/{m}")}),
            Verdict::Inapplicable,
        ));
    }
    let mut candidates = Vec::new();
    let mut any_root = false;
    for q in divisors(&BigInt::from(k)) {
        for sign in [1, -1] {
            let x = Rational::new(BigInt::from(sign), q.clone());
            let value = p.eval(&x);
            any_root |= value.is_zero();
            candidates.push(json!({"x": fmt_rational(&x), "value": fmt_rational(&value)}));
        }
    }
    let verdict = if any_root { Verdict::Fail } else { Verdict::Pass };
    Ok(AuditStep::new(
        "rho-degree",
        format!("{k}x^3 - 1 is irreducible over Q, so rho = {k}^(-1/3) has degree 3"),
        inputs,
        json!({"polynomial": p.to_string(), "rational_root_candidates": candidates, "irreducible": !any_root}),
        verdict,
    ))
}

/// Enclosure of `k^(-1/3)` of width `2^-bits` by bisection.
pub fn rho_enclosure(k: u64, bits: u32) -> Interval {
    let p = rho_polynomial(k);
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    for _ in 0..bits {
        let mid = (&lo + &hi) / int(2);
        if p.eval(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval { lo, hi }
}

/// Interval value of `a rho^2 - b rho + 1`.
pub fn quadratic_residual(a: i64, b: i64, rho: &Interval) -> Interval {
    let sq = Interval { lo: &rho.lo * &rho.lo, hi: &rho.hi * &rho.hi };
    let ar = if a >= 0 { Interval { lo: &sq.lo * int(a), hi: &sq.hi * int(a) } } else { Interval { lo: &sq.hi * int(a), hi: &sq.lo * int(a) } };
    let lo = ar.lo - &rho.hi * int(b) + Rational::one();
    let hi = ar.hi - &rho.lo * int(b) + Rational::one();
    Interval { lo, hi }
}

/// A two-length tetrahedron would need `(n11 n22 - n12 n21) rho^2 - (n11 + n22) rho + 1 = 0`,
/// a nonzero polynomial of degree at most 2 at an algebraic number of degree 3.
pub fn two_length_step(k: u64, bound: u32) -> Result<AuditStep> {
    let inputs = json!({"k": k, "bound": bound});
    if integer_cube_root(k).is_some() {
        return Ok(AuditStep::new("two-lengths", "cube k: not applicable".to_string(), inputs, json!({}), Verdict::Inapplicable));
    }
    let irreducible = is_irreducible(&rho_polynomial(k))?;
    let rho = rho_enclosure(k, 64);
    let b = bound as i64;
    let mut min: Option<(Rational, [i64; 4])> = None;
    let mut systems = 0u64;
    let mut zero_excluded = true;
    for n11 in 0..=b {
        for n12 in 0..=b {
            for n21 in 0..=b {
                for n22 in 0..=b {
                    if n11 == 0 && n12 == 0 && n21 == 0 && n22 == 0 {
                        continue;
                    }
                    systems += 1;
                    let r = quadratic_residual(n11 * n22 - n12 * n21, n11 + n22, &rho);
                    if r.contains_zero() {
                        zero_excluded = false;
                    }
                    let mig = r.mig();
                    if min.as_ref().is_none_or(|(m, _)| &mig < m) {
                        min = Some((mig, [n11, n12, n21, n22]));
                    }
                }
            }
        }
    }
    let (min_res, argmin) = min.expect("at least one system");
    let verdict = if irreducible && zero_excluded && min_res.is_positive() { Verdict::Pass } else { Verdict::Fail };
    Ok(AuditStep::new(
        "two-lengths",
        format!("no tetrahedron with two edge lengths is a {k}-reptile"),
        inputs,
        json!({
            "degree_argument": "the quadratic has constant term 1, so it is a nonzero polynomial of degree at most 2; it cannot vanish at rho, whose minimal polynomial has degree 3",
            "rho_polynomial": rho_polynomial(k).to_string(),
            "rho_enclosure": [fmt_rational(&rho.lo), fmt_rational(&rho.hi)],
            "systems": systems,
            "degenerate_excluded": 1,
            "min_abs_residual_lower_bound": fmt_rational(&min_res),
            "min_abs_residual_approx": crate::algebra::rational_to_f64(&min_res),
            "argmin": argmin,
        }),
        verdict,
    ))
}

fn identity_json(m: &SymMatrix, scale: &MPoly, factors: &[MPoly], points: &[(Rational, Rational)]) -> Result<(Value, bool)> {
    let product = factors.iter().fold(symbolic::integer(1), |acc, f| acc.mul(f));
    let d = det(m)?;
    let holds = identity_holds(&d.mul(scale), &product)?;
    let mut spots = Vec::new();
    let mut spots_ok = true;
    for (s, t) in points {
        let num = rational_determinant(&numeric_matrix(m, s, t)?)?;
        let lhs = reduce(&scale.mul(&symbolic::constant(num.clone())))?;
        let rhs = reduce(&product.substitute_rational("s", s)?.substitute_rational("t", t)?)?;
        spots_ok &= lhs == rhs;
        spots.push(json!({"s": fmt_rational(s), "t": fmt_rational(t), "det": fmt_rational(&num), "scaled_det": lhs.display(), "product": rhs.display()}));
    }
    Ok((
        json!({
            "matrix": matrix_to_json(m),
            "scale": poly_to_json(scale),
            "factors": factors.iter().map(poly_to_json).collect::<Vec<_>>(),
            "determinant": poly_to_json(&d),
            "spot_checks": spots,
        }),
        holds && spots_ok,
    ))
}

/// `det A = (1 + s)^2 (1 - 2s - 3t^2)` for the triangle-tripod matrix.
pub fn tripod_identity_step() -> Result<AuditStep> {
    let (s, t) = (var("s"), var("t"));
    let one = symbolic::integer(1);
    let factors = vec![one.add(&s), one.add(&s), one.sub(&s.scale(&int(2))).sub(&t.pow(2).scale(&int(3)))];
    debug_assert!(identity_holds(&factors.iter().fold(one.clone(), |a, f| a.mul(f)), &tripod_det_factored()).unwrap_or(false));
    let mut points = spot_points();
    points.push((rat(1, 3), rat(1, 5)));
    let (cert, ok) = identity_json(&tripod_matrix(), &one, &factors, &points)?;
    Ok(AuditStep::new(
        "tripod-determinant",
        "triangle-tripod matrix: det A = (1 + s)^2 (1 - 2s - 3t^2), so t determines s and the tetrahedron is the two-length pyramid".to_string(),
        json!({"symbols": ["s", "t"]}),
        cert,
        if ok { Verdict::Pass } else { Verdict::Fail },
    ))
}

fn row_sum_certificate(m: &SymMatrix, coefficients: &[i64], expected: &[MPoly], numeric_t: &Rational) -> Result<(Value, bool)> {
    let combo = row_combination(m, coefficients);
    let mut ok = combo.len() == expected.len();
    for (c, e) in combo.iter().zip(expected) {
        ok &= identity_holds(c, e)?;
    }
    let t_minus_one = var("t").sub(&symbolic::integer(1));
    // every nonzero entry is a positive multiple of t - 1 < 0
    let sign_definite = combo.iter().all(|c| c.is_zero() || symbolic::positive_ratio(c, &t_minus_one).is_some())
        && combo.iter().any(|c| !c.is_zero());
    let free_of_u = combo.iter().all(|c| c.degree_in("u") == Ok(0));
    let numeric = symbolic::substitute_all(&combo, &[("t", numeric_t.clone())])?;
    Ok((
        json!({
            "matrix": matrix_to_json(m),
            "coefficients": coefficients,
            "combination": combo.iter().map(entry_to_string).collect::<Vec<_>>(),
            "expected": expected.iter().map(entry_to_string).collect::<Vec<_>>(),
            "sign_factor": "t - 1",
            "sign_reason": "t is the cosine of a positive angle, so t < 1 and every entry is <= 0",
            "free_symbols": ["u"],
            "numeric": {"t": fmt_rational(numeric_t), "combination": numeric.iter().map(entry_to_string).collect::<Vec<_>>()},
        }),
        ok && sign_definite && free_of_u,
    ))
}

/// Angle bookkeeping for `alpha_min = pi/n`: `2 pi/n + m pi/n > pi` with `m < n` forces `m = n - 1`.
pub fn multiples_bookkeeping(n_max: i64) -> Vec<Value> {
    (3..=n_max)
        .map(|n| {
            let feasible: Vec<i64> = (1..n).filter(|&m| rat(2, n) + rat(m, n) > int(1)).collect();
            json!({
                "n": n,
                "feasible_m": feasible,
                "beta": RationalAngle::new(n - 1, n).map(|a| a.to_string()).unwrap_or_default(),
                "single_vertex_requires_n": 2,
            })
        })
        .collect()
}

/// Angles that are multiples of `alpha_min`: the first and last rows add to `(t-1, 0, 0, t-1)`.
pub fn multiples_case_step() -> Result<AuditStep> {
    let t1 = var("t").sub(&symbolic::integer(1));
    let zero = symbolic::integer(0);
    let expected = vec![t1.clone(), zero.clone(), zero, t1];
    let (mut cert, ok) = row_sum_certificate(&multiples_matrix(), &[1, 0, 0, 1], &expected, &rat(3, 4))?;
    let book = multiples_bookkeeping(12);
    let book_ok = book.iter().all(|b| b["feasible_m"] == json!([b["n"].as_i64().unwrap_or(0) - 1]));
    cert["bookkeeping"] = json!(book);
    cert["subcases"] = json!({
        "triangle": "the remaining edges carry beta: triangle-tripod configuration, see tripod-determinant",
        "single_vertex": "beta = alpha_min forces (n - 1)/n = 1/n, i.e. n = 2, contradicting n >= 3",
        "path": "row-space certificate above",
    });
    Ok(AuditStep::new(
        "multiples",
        "all angles multiples of alpha_min = pi/n: beta = pi - alpha_min and the path case has a sign-definite row combination".to_string(),
        json!({"symbols": ["t", "u"], "n_range": [3, 12]}),
        cert,
        if ok && book_ok { Verdict::Pass } else { Verdict::Fail },
    ))
}

/// Path configuration with `beta1 + beta2 = pi`: rows two and three add to `(0, t-1, t-1, 0)`.
pub fn path_complement_step() -> Result<AuditStep> {
    let t1 = var("t").sub(&symbolic::integer(1));
    let zero = symbolic::integer(0);
    let expected = vec![zero.clone(), t1.clone(), t1, zero];
    let (cert, ok) = row_sum_certificate(&complement_matrix(), &[0, 1, 1, 0], &expected, &rat(2, 3))?;
    Ok(AuditStep::new(
        "path-complement",
        "no tetrahedron has the path configuration with beta1 + beta2 = pi".to_string(),
        json!({"symbols": ["t"]}),
        cert,
        if ok { Verdict::Pass } else { Verdict::Fail },
    ))
}

/// `n1 beta1 + n2 beta2 = pi` with `n1, n2 >= 1` and both vertex inequalities leaves `n1 = n2 = 1`.
pub fn beta_constraints_step() -> Result<AuditStep> {
    let mut cases = Vec::new();
    let mut ok = true;
    for n1 in 1..=6i64 {
        for n2 in 1..=6i64 {
            let case = if n1 >= 2 {
                json!({"n1": n1, "n2": n2, "status": "excluded", "violated": "2 beta1 + beta2 > pi",
                       "reason": format!("2 beta1 + beta2 <= {n1} beta1 + {n2} beta2 = pi")})
            } else if n2 >= 2 {
                json!({"n1": n1, "n2": n2, "status": "excluded", "violated": "beta1 + 2 beta2 > pi",
                       "reason": format!("beta1 + 2 beta2 <= {n1} beta1 + {n2} beta2 = pi")})
            } else {
                // beta1 = beta2 = pi/2 satisfies everything
                let (x, y) = (rat(1, 2), rat(1, 2));
                let fine = &x + &y == int(1) && &x + &y * int(2) > int(1) && &x * int(2) + &y > int(1);
                ok &= fine;
                json!({"n1": 1, "n2": 1, "status": "survives", "witness": [fmt_rational(&x), fmt_rational(&y)]})
            };
            cases.push(case);
        }
    }
    Ok(AuditStep::new(
        "beta-constraints",
        "for the path configuration n1 beta1 + n2 beta2 = pi forces n1 = n2 = 1 or one of n1, n2 zero, and max(beta1, beta2) > pi/3".to_string(),
        json!({"inequalities": ["beta1 + 2 beta2 > pi", "2 beta1 + beta2 > pi"], "range": [1, 6]}),
        json!({
            "cases": cases,
            "general": "for n1 >= 2 (resp. n2 >= 2) the excluded inequality is dominated coefficientwise by n1 beta1 + n2 beta2 = pi, for every n1, n2",
            "max_bound": {"claim": "max(beta1, beta2) > pi/3", "reason": "if both are <= pi/3 then beta1 + 2 beta2 <= pi"},
        }),
        if ok { Verdict::Pass } else { Verdict::Fail },
    ))
}

/// Path determinant factorization over the golden field and the eigenvalue `lambda1`.
pub fn path_det_factorization_step() -> Result<AuditStep> {
    let (s, t, g) = (var("s"), var("t"), var("g"));
    let one = symbolic::integer(1);
    let quad = s.pow(2).add(&t.pow(2)).add(&s.mul(&t)).add(&s).add(&t).sub(&one);
    let g2 = g.pow(2);
    let factors = vec![quad.neg(), g2.mul(&s).sub(&t).add(&g), g2.mul(&t).sub(&s).add(&g)];
    debug_assert!(identity_holds(&factors.iter().fold(one.clone(), |a, f| a.mul(f)), &path_det_cleared()).unwrap_or(false));
    let mut points = spot_points();
    points.push((rat(1, 4), rat(1, 2)));
    let m = path_matrix();
    let (mut cert, ok) = identity_json(&m, &g2, &factors, &points)?;
    let d = det(&m)?;
    let uncleared_ratio = identity_holds(&d, &path_det_factored().mul(&g2))?;
    let cp = char_poly(&m)?;
    let lam = lambda1();
    let root = symbolic::is_root(&cp, &lam)?;
    // at s = 0, t = g/2
    let at = lam.substitute_rational("s", &Rational::zero())?.substitute("t", &g.scale(&rat(1, 2)))?;
    let at = reduce(&at)?;
    let cp_at = cp.substitute_rational("s", &Rational::zero())?.substitute("t", &g.scale(&rat(1, 2)))?;
    let point_root = symbolic::is_root(&cp_at, &at)?;
    cert["uncleared_form"] = json!({
        "product": poly_to_json(&path_det_factored()),
        "relation": "det A = g^2 * product",
        "holds": uncleared_ratio,
    });
    cert["lambda1"] = json!({
        "value": poly_to_json(&lam),
        "char_poly": poly_to_json(&cp),
        "is_root": root,
        "at_s0_t_half_g": {"lambda1": at.display(), "is_root": point_root},
    });
    Ok(AuditStep::new(
        "path-determinant",
        "path matrix: g^2 det A = -(s^2+t^2+st+s+t-1)(g^2 s - t + g)(g^2 t - s + g) with g the golden ratio, and lambda1 = -g s + t/g - 1 is an eigenvalue".to_string(),
        json!({"symbols": ["s", "t", "g"], "golden_relation": "g^2 = g + 1"}),
        cert,
        if ok && uncleared_ratio && root && point_root { Verdict::Pass } else { Verdict::Fail },
    ))
}

fn interval_json(i: &Interval) -> Value {
    json!([fmt_rational(&i.lo), fmt_rational(&i.hi)])
}

/// `lambda1 <= 0` and `t >= 1/2` bound `s` below, hence `beta2 < 2 pi/3`, `beta1 > pi/6`
/// and `beta1 = pi/n` with `n` in `{3, 4, 5}`.
pub fn bound_chain_step() -> Result<AuditStep> {
    let bound = parse_real("1/(2*phi^2) - 1/phi")?;
    let closed = parse_real("2 - 3*phi/2")?;
    let width = rat(1, 1_000_000);
    let enc = bound.enclosure(&rat(1, 1 << 20));
    let in_expected_window = enc.lo > rat(-428, 1000) && enc.hi < rat(-427, 1000);
    let above = bound > AlgebraicReal::from_rational(rat(-1, 2));
    let acos = arccos(&bound, &width)?;
    let pi = pi_enclosure(64);
    let two_thirds_pi = Interval { lo: &pi.lo * rat(2, 3), hi: &pi.hi * rat(2, 3) };
    let below = acos.hi < two_thirds_pi.lo;
    // 2 beta1 > pi - beta2 > pi/3
    let beta1_lower = (int(1) - rat(2, 3)) / int(2);
    let ns: Vec<i64> = (3..=12).filter(|&n| rat(1, n) > beta1_lower).collect();
    let ok = bound == closed && in_expected_window && above && below && ns == vec![3, 4, 5];
    Ok(AuditStep::new(
        "bound-chain",
        "lambda1 <= 0 gives s >= t/g^2 - 1/g >= 1/(2g^2) - 1/g > -1/2, so beta2 < 2pi/3, beta1 > pi/6 and n is 3, 4 or 5".to_string(),
        json!({"t_min": "1/2", "expected_bound": "-0.43"}),
        json!({
            "lambda1_bound": "s >= t/g^2 - 1/g (divide -g s + t/g - 1 <= 0 by g > 0)",
            "s_bound": {"exact": "1/(2 g^2) - 1/g", "closed_form": "2 - 3g/2", "value": serde_json::to_value(&bound).unwrap_or(Value::Null),
                        "enclosure": interval_json(&enc), "approx": bound.to_f64(), "expected": "-0.43"},
            "exceeds_cos_two_pi_thirds": above,
            "arccos_enclosure": interval_json(&acos),
            "two_pi_thirds_enclosure": interval_json(&two_thirds_pi),
            "arccos_width": fmt_rational(&width),
            "beta1_lower_pi_multiple": fmt_rational(&beta1_lower),
            "n_values": ns,
        }),
        if ok { Verdict::Pass } else { Verdict::Fail },
    ))
}

/// `beta1 = pi/5`: `t = g/2`, `s < cos(3pi/5) = -1/(2g)`, and then `lambda1 > 0`.
pub fn exclude_pi_over_5_step() -> Result<AuditStep> {
    let g = var("g");
    let t = cosine_of(&RationalAngle::pi_over(5)?);
    let t_ok = t == parse_real("phi/2")?;
    let t_minpoly = t.minpoly().clone();
    let beta2_lower = int(1) - rat(2, 5);
    let s_upper = cosine_of(&RationalAngle::new(3, 5)?);
    let s_ok = s_upper == parse_real("-1/(2*phi)")?;
    // 1/(2g) = (g - 1)/2
    let s_sym = g.sub(&symbolic::integer(1)).scale(&rat(-1, 2));
    let lam = lambda1().substitute("t", &g.scale(&rat(1, 2)))?;
    let at_boundary = reduce(&lam.substitute("s", &s_sym)?)?;
    let slope = reduce(&lam.coefficients_in("s")?.get(1).cloned().unwrap_or_else(|| symbolic::integer(0)))?;
    let slope_negative = identity_holds(&slope, &g.neg())?;
    let ok = t_ok && s_ok && at_boundary.is_zero() && slope_negative && beta2_lower == rat(3, 5);
    Ok(AuditStep::new(
        "exclude-pi-over-5",
        "beta1 = pi/5 forces lambda1 > 0, contradicting negative semidefiniteness".to_string(),
        json!({"beta1": "pi/5"}),
        json!({
            "t": "g/2",
            "t_minpoly": t_minpoly.to_string(),
            "beta2_lower_pi_multiple": fmt_rational(&beta2_lower),
            "s_upper": "-1/(2g)",
            "lambda1_at_t": poly_to_json(&reduce(&lam)?),
            "lambda1_at_boundary": at_boundary.display(),
            "slope_in_s": slope.display(),
            "conclusion": "lambda1 is decreasing in s and vanishes at s = -1/(2g), so it is positive for every s < -1/(2g)",
        }),
        if ok { Verdict::Pass } else { Verdict::Fail },
    ))
}

/// Coefficients in `s` of the path determinant at a fixed `t`.
pub fn det_in_s(t: &AlgebraicReal) -> Result<Vec<AlgebraicReal>> {
    let d = det(&path_matrix())?;
    d.coefficients_in("s")?
        .iter()
        .map(|c| {
            let powers = c.coefficients_in("t")?;
            let mut acc = AlgebraicReal::zero();
            let mut tp = AlgebraicReal::one();
            for p in powers {
                let r = p.eval(&[])?;
                if !r.is_zero() {
                    acc = acc.add(&tp.mul_rational(&r))?;
                }
                tp = tp.mul(t)?;
            }
            Ok(acc)
        })
        .collect()
}

pub const FINAL_CASES: [(&str, &str, [&str; 2]); 3] =
    [("0", "pi/2", ["-0.618", "0.618"]), ("1/2", "pi/3", ["-0.427", "0.151"]), ("sqrt(2)/2", "pi/4", ["-0.348", "-0.131"])];

pub const RATIONAL_ANGLE_ASSUMPTION: &str =
    "beta2 is a rational multiple of pi (scissors-congruence fact for reptiles, cited and not re-derived)";

/// For `t` in `{0, 1/2, 1/sqrt 2}` the singular values of `s` in `(-1, 1)` are not
/// cosines of rational angles.
pub fn final_cases_step() -> Result<AuditStep> {
    let mut cases = Vec::new();
    let mut ok = true;
    let entries: Vec<AlgebraicReal> = (1..=4).map(catalog).collect::<Result<Vec<_>>>()?.iter().flat_map(|c| c.entries.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>()).collect();
    for (t_text, beta1, expected) in FINAL_CASES {
        let t = parse_real(t_text)?;
        let angle_ok = match beta1 {
            "pi/2" => cosine_of(&RationalAngle::pi_over(2)?) == t,
            "pi/3" => cosine_of(&RationalAngle::pi_over(3)?) == t,
            _ => cosine_of(&RationalAngle::pi_over(4)?) == t,
        };
        let coeffs = det_in_s(&t)?;
        let roots: Vec<AlgebraicReal> = ExtPolynomial::from_coefficients(&coeffs)?
            .real_roots()?
            .into_iter()
            .filter(|r| r > &AlgebraicReal::from_integer(-1) && r < &AlgebraicReal::one())
            .collect();
        let count_ok = roots.len() == 2;
        let mut root_json = Vec::new();
        for (r, p) in roots.iter().zip(expected.iter()) {
            let decimal: f64 = p.parse().unwrap_or(f64::NAN);
            let close = (r.to_f64() - decimal).abs() <= 1e-3;
            let matched = match_rational_angle(r)?;
            let gaps: Vec<Option<Rational>> = entries.iter().map(|e| certified_gap(r, e)).collect();
            let min_gap = gaps.iter().try_fold(None::<Rational>, |acc, g| {
                let g = g.clone()?;
                Some(Some(match acc {
                    Some(a) if a < g => a,
                    _ => g,
                }))
            });
            let min_gap = min_gap.flatten();
            ok &= close && matched.is_none() && min_gap.is_some();
            root_json.push(json!({
                "value": serde_json::to_value(r).unwrap_or(Value::Null),
                "approx": r.to_f64(),
                "degree": r.degree(),
                "expected": p,
                "within_0_001": close,
                "rational_angle": matched.map(|a| a.to_string()),
                "catalog_entries_compared": entries.len(),
                "min_catalog_gap": min_gap.as_ref().map(fmt_rational),
            }));
        }
        ok &= count_ok && angle_ok;
        cases.push(json!({
            "t": t_text,
            "beta1": beta1,
            "det_coefficients_in_s": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "roots_in_open_unit_interval": roots.len(),
            "roots": root_json,
        }));
    }
    Ok(AuditStep::new(
        "final-cases",
        "for beta1 in {pi/2, pi/3, pi/4} no admissible cos(beta2) is the cosine of a rational angle".to_string(),
        json!({"assumption": RATIONAL_ANGLE_ASSUMPTION}),
        json!({"assumption": RATIONAL_ANGLE_ASSUMPTION, "cases": cases}),
        if ok { Verdict::Pass } else { Verdict::Fail },
    ))
}
