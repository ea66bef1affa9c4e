//! Parser for exact real shorthand: rationals, decimals, `sqrt(...)`, `phi`,
//! `+ - * /`, integer powers, parentheses, and minimal-polynomial JSON objects.

use super::{parse_rational, AlgebraicReal, Rational};
use crate::error::{Error, Result};

/// Parses an exact real such as `"1/2"`, `"sqrt(2)/2"`, `"(1+sqrt(5))/4"`, `"phi - 1"`
/// or `{"minpoly": ["-1","0","2"], "interval": ["0","1"]}`.
pub fn parse_real(text: &str) -> Result<AlgebraicReal> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("minpoly object: {e}")));
    }
    let mut parser = Parser { chars: trimmed.chars().collect(), pos: 0 };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {} in {:?}", self.pos + 1, self.chars.iter().collect::<String>()))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<AlgebraicReal> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraicReal> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<AlgebraicReal> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let start = self.pos;
            while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let n: u32 = digits.parse().map_err(|_| self.error("expected an integer exponent"))?;
            return base.pow(n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<AlgebraicReal> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit() || *c == '.') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let r = parse_rational(&text).map_err(|_| self.error("malformed number"))?;
                Ok(AlgebraicReal::from_rational(r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match name.as_str() {
                    "phi" => {
                        let five = AlgebraicReal::sqrt_rational(&Rational::from_integer(5.into()))?;
                        Ok(five.add_rational(&Rational::from_integer(1.into())).mul_rational(&Rational::new(1.into(), 2.into())))
                    }
                    "sqrt" => {
                        if !self.eat('(') {
                            return Err(self.error("expected '(' after sqrt"));
                        }
                        let v = self.expr()?;
                        if !self.eat(')') {
                            return Err(self.error("expected ')'"));
                        }
                        v.sqrt()
                    }
                    _ => Err(self.error(&format!("unknown name {name:?}"))),
                }
            }
            _ => Err(self.error("expected a number, name or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, IntPolynomial};

    #[test]
    fn parses_radicals() {
        let v = parse_real("sqrt(2)/2").unwrap();
        assert_eq!(v.minpoly(), &IntPolynomial::from_i64(&[-1, 0, 2]));
        let c36 = parse_real("(1 + sqrt(5)) / 4").unwrap();
        assert_eq!(c36.minpoly(), &IntPolynomial::from_i64(&[-1, -2, 4]));
        assert_eq!(parse_real("phi - 1").unwrap(), parse_real("(sqrt(5) - 1)/2").unwrap());
        assert_eq!(parse_real("phi^2").unwrap(), parse_real("phi + 1").unwrap());
        assert_eq!(parse_real("-0.25").unwrap(), AlgebraicReal::from_rational(rat(-1, 4)));
    }

    #[test]
    fn parses_minpoly_json() {
        let v = parse_real(r#"{"minpoly": ["-2", "0", "1"], "interval": ["1", "2"]}"#).unwrap();
        assert_eq!(v, parse_real("sqrt(2)").unwrap());
        assert!(parse_real(r#"{"minpoly": ["-2", "0", "1"], "interval": ["-2", "2"]}"#).is_err());
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse_real("sqrt(2"), Err(Error::Parse(_))));
        assert!(matches!(parse_real("cosh(1)"), Err(Error::Parse(_))));
        assert!(matches!(parse_real("1/0"), Err(Error::DivisionByZero)));
        assert!(matches!(parse_real("1 2"), Err(Error::Parse(_))));
    }
}
