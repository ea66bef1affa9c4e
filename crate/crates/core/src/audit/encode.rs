//! JSON encodings of polynomials and symbolic matrices used in certificates.

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::algebra::{fmt_rational, parse_rational, MPoly, Rational};
use crate::error::{Error, Result};
use crate::fiedler::symbolic::{constant, var, VARS};

/// `{"display": "...", "terms": [["coeff", {"s": 1, ...}], ...]}`.
pub fn poly_to_json(p: &MPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut mono = Map::new();
            for (name, &e) in p.vars().iter().zip(m) {
                if e > 0 {
                    mono.insert(name.clone(), json!(e));
                }
            }
            json!([fmt_rational(c), Value::Object(mono)])
        })
        .collect();
    json!({"display": p.display(), "terms": terms})
}

pub fn poly_from_json(v: &Value) -> Result<MPoly> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("polynomial needs a terms array".into()))?;
    let mut out = constant(Rational::zero());
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse("term must be [coeff, monomial]".into()))?;
        let c = parse_rational(pair[0].as_str().ok_or_else(|| Error::Parse("coefficient must be a string".into()))?)?;
        let mut term = constant(c);
        let mono = pair[1].as_object().ok_or_else(|| Error::Parse("monomial must be an object".into()))?;
        for (name, e) in mono {
            if !VARS.contains(&name.as_str()) {
                return Err(Error::Parse(format!("unknown symbol {name}")));
            }
            let e = e.as_u64().ok_or_else(|| Error::Parse("exponent must be a nonnegative integer".into()))?;
            term = term.mul(&var(name).pow(e as u32));
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Matrix entries of the form `[-]symbol` or a rational.
pub fn entry_to_string(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    if p.terms().len() == 1 {
        let (m, c) = p.terms().iter().next().expect("one term");
        let vars: Vec<&String> = p.vars().iter().zip(m).filter(|(_, &e)| e > 0).map(|(n, _)| n).collect();
        if vars.is_empty() {
            return fmt_rational(c);
        }
        if vars.len() == 1 && m.iter().sum::<u32>() == 1 {
            if c.is_one() {
                return vars[0].clone();
            }
            if (-c).is_one() {
                return format!("-{}", vars[0]);
            }
        }
    }
    p.display()
}

pub fn entry_from_str(s: &str) -> Result<MPoly> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let p = if VARS.contains(&body) { var(body) } else { constant(parse_rational(body)?) };
    Ok(if neg { p.neg() } else { p })
}

pub fn matrix_to_json(m: &[Vec<MPoly>]) -> Value {
    json!(m.iter().map(|r| r.iter().map(entry_to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn matrix_from_json(v: &Value) -> Result<Vec<Vec<MPoly>>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(|e| entry_from_str(e.as_str().ok_or_else(|| Error::Parse("matrix entry must be a string".into()))?))
                .collect()
        })
        .collect()
}

pub fn rational_field(v: &Value, key: &str) -> Result<Rational> {
    let s = v.get(key).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing field {key}")))?;
    parse_rational(s)
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiedler::symbolic::{path_det_cleared, tripod_matrix};

    #[test]
    fn round_trips() {
        let p = path_det_cleared();
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
        let m = tripod_matrix();
        let j = matrix_to_json(&m);
        assert_eq!(j[0][1], json!("t"));
        assert_eq!(matrix_from_json(&j).unwrap(), m);
        assert_eq!(entry_from_str("-u").unwrap(), var("u").neg());
        assert_eq!(entry_from_str("-3/4").unwrap(), constant(crate::algebra::rat(-3, 4)));
    }
}
