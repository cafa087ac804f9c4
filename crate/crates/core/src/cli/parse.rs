//! Recursive descent parser for univariate polynomial expressions.
//!
//! ```text
//! poly   := sign? term (sign term)*
//! sign   := '+' | '-'
//! term   := coeff ('*'? power)? | power
//! coeff  := INT ('/' INT)?
//! power  := VAR ('^' INT)?
//! ```
//!
//! Whitespace is skipped between tokens. The first letter seen is the
//! variable; any other letter is an error.

use std::fmt;

use num_bigint::BigInt;

use crate::arith::Rational;
use crate::poly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending character.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<u8>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn unexpected<T>(&mut self, expected: &str) -> Result<T, ParseError> {
        match self.peek() {
            Some(c) => self.error(format!("expected {expected}, found '{}'", c as char)),
            None => self.error(format!("expected {expected}, found end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.unexpected("a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let k = self.integer()?;
        usize::try_from(k).or_else(|_| {
            self.pos = at;
            self.error("exponent too large")
        })
    }

    fn coeff(&mut self) -> Result<Rational, ParseError> {
        let num = self.integer()?;
        if self.peek() != Some(b'/') {
            return Ok(Rational::from(num));
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let den = self.integer()?;
        Rational::try_new(num, den).or_else(|_| {
            self.pos = at;
            self.error("zero denominator")
        })
    }

    fn power(&mut self) -> Result<usize, ParseError> {
        let c = self.peek().expect("caller checked a letter");
        match self.var {
            None => self.var = Some(c),
            Some(v) if v != c => {
                return self.error(format!(
                    "second variable '{}' (expression is in '{}')",
                    c as char, v as char
                ))
            }
            _ => {}
        }
        self.pos += 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.exponent()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(Rational, usize), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let q = self.coeff()?;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        match self.peek() {
                            Some(c) if c.is_ascii_alphabetic() => Ok((q, self.power()?)),
                            _ => self.unexpected("a variable"),
                        }
                    }
                    Some(c) if c.is_ascii_alphabetic() => Ok((q, self.power()?)),
                    _ => Ok((q, 0)),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => Ok((Rational::one(), self.power()?)),
            _ => self.unexpected("a term"),
        }
    }

    fn poly(&mut self) -> Result<UniPoly, ParseError> {
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            if negative {
                coeffs[k] -= &c;
            } else {
                coeffs[k] += &c;
            }
            negative = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                None => return Ok(UniPoly::new(coeffs)),
                Some(_) => return self.unexpected("'+', '-' or end of input"),
            };
            self.pos += 1;
        }
    }
}

/// Parses a polynomial in a single variable with rational coefficients.
pub fn parse_poly(text: &str) -> Result<UniPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        var: None,
    };
    if p.peek().is_none() {
        return p.error("empty input");
    }
    p.poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(s: &str) -> UniPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn basic_forms() {
        assert_eq!(ok("x^3 - 2"), UniPoly::from_ints(&[-2, 0, 0, 1]));
        assert_eq!(ok("x^2 + 1"), UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(ok("-x^3-3x+1"), UniPoly::from_ints(&[1, -3, 0, -1]));
        assert_eq!(ok("2*t^2 + 3 t"), UniPoly::from_ints(&[0, 3, 2]));
        assert_eq!(ok("x^2 + x^2"), UniPoly::from_ints(&[0, 0, 2]));
        assert_eq!(ok("7"), UniPoly::from_ints(&[7]));
    }

    #[test]
    fn rational_coefficients() {
        let p = ok("1/2 x^2 - 3/4");
        assert_eq!(p.coeff(2), Rational::new(1, 2));
        assert_eq!(p.coeff(0), Rational::new(-3, 4));
    }

    #[test]
    fn second_variable() {
        let e = parse_poly("x^2 + y").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(e.message.contains("second variable"));
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(parse_poly("").unwrap_err().position, 0);
        assert_eq!(parse_poly("x^").unwrap_err().position, 2);
        assert_eq!(parse_poly("x + + 1").unwrap_err().position, 4);
        assert_eq!(parse_poly("x 2").unwrap_err().position, 2);
        assert_eq!(parse_poly("1/0 x").unwrap_err().position, 2);
        assert_eq!(parse_poly("3*").unwrap_err().position, 2);
    }

    #[test]
    fn display_round_trip() {
        for s in ["x^3 - 2", "x^4 + 1", "x^3 - 3x - 1", "-x^2 + 1/2x - 5"] {
            let p = ok(s);
            assert_eq!(ok(&p.to_string()), p);
        }
    }
}
