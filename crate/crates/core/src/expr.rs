//! Polynomial expression strings: `2*x1^2 - 1/3*t + (1 - lambda)*mu`.
//!
//! Used for the `coef` fields of the JSON formats and for parenthesised
//! coefficients inside compact structural notation.

use crate::error::{Error, Result};
use crate::poly::{Rational, ScalarPoly};
use num_bigint::BigInt;
use num_traits::Zero;

/// ASCII spelling of the Greek letters accepted as parameter names.
pub fn normalize_letter(c: char) -> Option<&'static str> {
    Some(match c {
        'λ' => "lambda",
        'μ' => "mu",
        'σ' => "sigma",
        'τ' => "tau",
        'ℓ' => "ell",
        'κ' => "kappa",
        'ζ' => "zeta",
        'ν' => "nu",
        'ρ' => "rho",
        'θ' => "theta",
        'α' => "alpha",
        'β' => "beta",
        'γ' => "gamma",
        _ => return None,
    })
}

pub(crate) fn is_minus(c: char) -> bool {
    c == '-' || c == '−'
}

pub(crate) struct Cursor<'a> {
    chars: Vec<char>,
    pub pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: msg.into(),
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    /// Identifier: a letter followed by letters, digits or `_` when
    /// `allow_digits`, letters only otherwise.
    pub fn ident(&mut self, allow_digits: bool) -> Option<String> {
        let mut out = String::new();
        let first = self.peek()?;
        if !(first.is_alphabetic()) {
            return None;
        }
        while let Some(c) = self.peek() {
            if let Some(name) = normalize_letter(c) {
                out.push_str(name);
            } else if c.is_ascii_alphabetic() || (out.len() > 0 && c == '_') {
                out.push(c);
            } else if allow_digits && c.is_ascii_digit() && !out.is_empty() {
                out.push(c);
            } else if c.is_alphabetic() {
                return None;
            } else {
                break;
            }
            self.pos += 1;
        }
        Some(out)
    }
}

pub fn parse_poly(src: &str) -> Result<ScalarPoly> {
    let mut cur = Cursor::new(src);
    let p = parse_expr(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(p)
}

pub(crate) fn parse_expr(cur: &mut Cursor<'_>) -> Result<ScalarPoly> {
    cur.skip_ws();
    let mut acc = parse_term(cur)?;
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('+') => {
                cur.bump();
                acc = &acc + &parse_term(cur)?;
            }
            Some(c) if is_minus(c) => {
                cur.bump();
                acc = &acc - &parse_term(cur)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<ScalarPoly> {
    let mut acc = parse_factor(cur)?;
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('*') => {
                cur.bump();
                acc = &acc * &parse_factor(cur)?;
            }
            Some('/') => {
                cur.bump();
                cur.skip_ws();
                let at = cur.pos;
                let d = parse_factor(cur)?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => {
                        return Err(Error::Syntax {
                            position: at,
                            message: "division by zero".into(),
                        })
                    }
                    None => {
                        return Err(Error::Syntax {
                            position: at,
                            message: "division by a non-constant".into(),
                        })
                    }
                }
            }
            Some(c) if c == '(' || c.is_alphanumeric() => {
                // implicit multiplication: `2x`, `2(1-t)`
                acc = &acc * &parse_factor(cur)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_factor(cur: &mut Cursor<'_>) -> Result<ScalarPoly> {
    cur.skip_ws();
    match cur.peek() {
        Some(c) if is_minus(c) => {
            cur.bump();
            Ok(-parse_factor(cur)?)
        }
        Some('+') => {
            cur.bump();
            parse_factor(cur)
        }
        _ => {
            let base = parse_atom(cur)?;
            cur.skip_ws();
            if cur.peek() == Some('^') {
                cur.bump();
                cur.skip_ws();
                let e = cur
                    .integer()
                    .ok_or_else(|| cur.err("expected integer exponent"))?;
                let e: u32 = e
                    .try_into()
                    .map_err(|_| cur.err("exponent out of range"))?;
                Ok(base.pow(e))
            } else {
                Ok(base)
            }
        }
    }
}

fn parse_atom(cur: &mut Cursor<'_>) -> Result<ScalarPoly> {
    cur.skip_ws();
    match cur.peek() {
        Some('(') => {
            cur.bump();
            let inner = parse_expr(cur)?;
            cur.skip_ws();
            if cur.bump() != Some(')') {
                return Err(cur.err("expected ')'"));
            }
            Ok(inner)
        }
        Some(c) if c.is_ascii_digit() => {
            let n = cur.integer().expect("digit present");
            Ok(ScalarPoly::constant(Rational::from_integer(n)))
        }
        Some(c) if c.is_alphabetic() => {
            let start = cur.pos;
            let name = cur.ident(true).ok_or_else(|| Error::Syntax {
                position: start,
                message: "unsupported character in identifier".into(),
            })?;
            Ok(ScalarPoly::var(&name))
        }
        Some(c) => Err(cur.err(format!("unexpected character '{c}'"))),
        None => Err(cur.err("unexpected end of input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn parses_rationals_and_powers() {
        let p = parse_poly("1/2*x^2 - (1 - y)*3").unwrap();
        assert_eq!(p.to_string(), "1/2*x^2 + 3*y - 3");
    }

    #[test]
    fn greek_letters_normalize() {
        let p = parse_poly("2λ − μ").unwrap();
        assert_eq!(p, parse_poly("2*lambda - mu").unwrap());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-x1*y2 + 3/7", "t^3 - 2*t*u1 + 1", "-1/2*kappa*q*r"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p, "{s}");
        }
    }

    #[test]
    fn rejects_bad_input_with_position() {
        match parse_poly("x + * y") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("x / y").is_err());
        assert!(parse_poly("1/0").is_err());
    }

    #[test]
    fn constant_division() {
        assert_eq!(parse_poly("-3/4").unwrap().as_constant(), Some(rat(-3, 4)));
    }
}
