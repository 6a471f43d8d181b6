//! Exact parser for polynomial expressions in `t`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 't' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `1/2*t^3 - 4` works
//! and `1/t` is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::Poly;
use super::Rational;

/// Polynomials above this degree are rejected while parsing.
pub const MAX_PARSE_DEGREE: usize = 4096;

/// Bound on `bits(coefficient) * exponent` for a single power.
const MAX_COEFF_BITS: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse_poly(input: &str) -> Result<Poly, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let value = p.expr(0)?;
    p.skip_ws();
    match p.peek() {
        None => Ok(value),
        Some(c) => Err(p.error(format!("unexpected character '{}'", c as char))),
    }
}

impl std::str::FromStr for Poly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

const MAX_NESTING: usize = 256;

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self, depth: usize) -> Result<Poly, ParseError> {
        if depth > MAX_NESTING {
            return Err(self.error("expression nested too deeply"));
        }
        let mut acc = self.term(depth)?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term(depth)?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term(depth)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<Poly, ParseError> {
        let mut acc = self.unary(depth)?;
        loop {
            if self.eat(b'*') {
                let start = self.pos;
                let rhs = self.unary(depth)?;
                if add_degrees(&acc, &rhs) > MAX_PARSE_DEGREE {
                    return Err(ParseError {
                        position: start,
                        message: format!("degree exceeds {MAX_PARSE_DEGREE}"),
                    });
                }
                acc = &acc * &rhs;
            } else if self.eat(b'/') {
                let start = self.pos;
                let rhs = self.unary(depth)?;
                if !rhs.is_constant() {
                    return Err(ParseError {
                        position: start,
                        message: "division by a non-constant polynomial".into(),
                    });
                }
                if rhs.is_zero() {
                    return Err(ParseError {
                        position: start,
                        message: "division by zero".into(),
                    });
                }
                acc = acc.scale(&rhs.coeff(0).recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, depth: usize) -> Result<Poly, ParseError> {
        if depth > MAX_NESTING {
            return Err(self.error("expression nested too deeply"));
        }
        if self.eat(b'-') {
            Ok(-&self.unary(depth + 1)?)
        } else if self.eat(b'+') {
            self.unary(depth + 1)
        } else {
            self.power(depth)
        }
    }

    fn power(&mut self, depth: usize) -> Result<Poly, ParseError> {
        let base = self.atom(depth)?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let exp = self.integer()?;
        let exp = u32::try_from(&exp).map_err(|_| ParseError {
            position: start,
            message: "exponent too large".into(),
        })?;
        let deg = base.degree().unwrap_or(0);
        if (deg as u64) * (exp as u64) > MAX_PARSE_DEGREE as u64 {
            return Err(ParseError {
                position: start,
                message: format!("degree exceeds {MAX_PARSE_DEGREE}"),
            });
        }
        if max_coeff_bits(&base).saturating_mul(exp as u64) > MAX_COEFF_BITS {
            return Err(ParseError {
                position: start,
                message: "coefficients too large".into(),
            });
        }
        Ok(base.pow(exp))
    }

    fn atom(&mut self, depth: usize) -> Result<Poly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(Poly::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr(depth + 1)?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<BigInt>().unwrap_or_else(|_| BigInt::zero()))
    }
}

fn max_coeff_bits(p: &Poly) -> u64 {
    p.coeffs()
        .iter()
        .map(|c| c.numer().bits().max(c.denom().bits()))
        .max()
        .unwrap_or(0)
}

fn add_degrees(a: &Poly, b: &Poly) -> usize {
    a.degree().unwrap_or(0) + b.degree().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_int_coeffs(c)
    }

    #[test]
    fn parses_products_and_powers() {
        let f = parse_poly("t^5*(t-1)^2").unwrap();
        assert_eq!(f, &Poly::t().pow(5) * &p(&[-1, 1]).pow(2));
    }

    #[test]
    fn parses_rational_coefficients() {
        let f = parse_poly("1/2*t^3 - 4").unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(f, &Poly::monomial(half, 3) - &Poly::from_int(4));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse_poly(" t ^ 2 -  1 ").unwrap(), p(&[-1, 0, 1]));
        assert_eq!(parse_poly("-t^2").unwrap(), p(&[0, 0, -1]));
        assert_eq!(parse_poly("-(t+1)").unwrap(), p(&[-1, -1]));
    }

    #[test]
    fn rejects_malformed_input_with_position() {
        let err = parse_poly("t^2 + * 3").unwrap_err();
        assert_eq!(err.position, 6);
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1/t").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("(t+1").is_err());
        assert!(parse_poly("t t").is_err());
        assert!(parse_poly("2.5*t").is_err());
        assert!(parse_poly("t^99999").is_err());
        assert!(parse_poly("(t^100)^100").is_err());
        assert!(parse_poly("((2^4096)^4096)^4096").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["t^5 - 3*t + 1/2", "-1/2*t^3 - 4", "0", "t", "-t^7 + 12*t^2"] {
            let f = parse_poly(s).unwrap();
            assert_eq!(f.to_string(), s);
            assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        }
    }
}
