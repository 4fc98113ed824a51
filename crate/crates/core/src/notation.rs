//! Compact structural notation, e.g. `(0,0,21)` or `(0,λ21+31,−21+λ31,2λ.41+32)`.
//!
//! Entry k lists d e_k; a term `c ji` means `c·e_j∧e_i`. A coefficient is a
//! product of integers, parameters (ASCII letter runs or single Greek
//! letters), `/integer` divisors and parenthesised polynomials. A digit run
//! that ends a term supplies the index pair in its last two digits; `.`
//! separates a numeric coefficient from the indices explicitly. Each
//! trailing `xR` appends a direction with zero differential.

use num_traits::{One, Signed, Zero};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::expr::{is_minus, normalize_letter, parse_expr, Cursor};
use crate::form::Form;
use crate::poly::{fmt_rational, Rational, ScalarPoly};

struct RawTerm {
    coef: ScalarPoly,
    i: usize,
    j: usize,
    pos: usize,
}

fn digit_run(cur: &mut Cursor<'_>) -> (usize, String) {
    let start = cur.pos;
    let mut s = String::new();
    while let Some(c) = cur.peek().filter(char::is_ascii_digit) {
        s.push(c);
        cur.bump();
    }
    (start, s)
}

fn int_of(s: &str) -> Rational {
    Rational::from_integer(s.parse().expect("digits"))
}

fn ends_term(c: Option<char>) -> bool {
    match c {
        None => true,
        Some(c) => c == ',' || c == ')' || c == '+' || is_minus(c) || c.is_whitespace(),
    }
}

/// Parse `[coefficient ["."]] digit digit`.
fn parse_term(cur: &mut Cursor<'_>) -> Result<RawTerm> {
    let mut coef = ScalarPoly::one();
    let mut have_coef = false;
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let (start, run) = digit_run(cur);
                match cur.peek() {
                    Some('.') => {
                        cur.bump();
                        coef = coef.scale(&int_of(&run));
                        return dotted_indices(cur, coef);
                    }
                    Some('/') | Some('(') => {
                        coef = coef.scale(&int_of(&run));
                        have_coef = true;
                    }
                    Some(c) if c.is_alphabetic() => {
                        coef = coef.scale(&int_of(&run));
                        have_coef = true;
                    }
                    next if ends_term(next) => {
                        if run.len() < 2 {
                            return Err(Error::Syntax {
                                position: start,
                                message: "expected an index pair".into(),
                            });
                        }
                        let (num, idx) = run.split_at(run.len() - 2);
                        if !num.is_empty() {
                            coef = coef.scale(&int_of(num));
                        }
                        return finish(coef, idx, start + num.len());
                    }
                    _ => return Err(cur.err("unexpected character in term")),
                }
            }
            Some('/') => {
                if !have_coef {
                    return Err(cur.err("'/' needs a preceding coefficient"));
                }
                cur.bump();
                let (start, run) = digit_run(cur);
                if run.is_empty() {
                    return Err(cur.err("expected integer divisor"));
                }
                let (den, rest) = match cur.peek() {
                    Some('.') | Some('(') => (run.as_str(), ""),
                    Some(c) if c.is_alphabetic() => (run.as_str(), ""),
                    next if ends_term(next) && run.len() >= 3 => run.split_at(run.len() - 2),
                    _ => {
                        return Err(Error::Syntax {
                            position: start,
                            message: "divisor must be followed by '.' and an index pair".into(),
                        })
                    }
                };
                let d = int_of(den);
                if d.is_zero() {
                    return Err(Error::Syntax {
                        position: start,
                        message: "division by zero".into(),
                    });
                }
                coef = coef.scale(&d.recip());
                if !rest.is_empty() {
                    return finish(coef, rest, start + den.len());
                }
                if cur.peek() == Some('.') {
                    cur.bump();
                    return dotted_indices(cur, coef);
                }
            }
            Some('(') => {
                let open = cur.pos;
                cur.bump();
                let inner = parse_expr(cur)?;
                cur.skip_ws();
                let at = cur.pos;
                match cur.bump() {
                    Some(')') => {}
                    None => {
                        return Err(Error::Syntax {
                            position: at,
                            message: format!("unclosed '(' opened at {open}"),
                        })
                    }
                    Some(c) => {
                        return Err(Error::Syntax {
                            position: at,
                            message: format!("expected ')' but found '{c}'"),
                        })
                    }
                }
                coef = &coef * &inner;
                have_coef = true;
            }
            Some(c) if normalize_letter(c).is_some() => {
                cur.bump();
                coef = &coef * &ScalarPoly::var(normalize_letter(c).expect("greek"));
                have_coef = true;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(c) = cur.peek().filter(char::is_ascii_alphabetic) {
                    name.push(c);
                    cur.bump();
                }
                coef = &coef * &ScalarPoly::var(&name);
                have_coef = true;
            }
            Some('.') if have_coef => {
                cur.bump();
                return dotted_indices(cur, coef);
            }
            Some(c) => return Err(cur.err(format!("unexpected character '{c}'"))),
            None => return Err(cur.err("unexpected end of input in term")),
        }
    }
}

/// The index pair after an explicit '.'.
fn dotted_indices(cur: &mut Cursor<'_>, coef: ScalarPoly) -> Result<RawTerm> {
    let (istart, idx) = digit_run(cur);
    let err = |position: usize, message: &str| {
        Err(Error::Syntax {
            position,
            message: message.into(),
        })
    };
    if idx.len() > 2 {
        return err(istart + 2, "expected exactly two index digits after '.'");
    }
    if idx.len() < 2 {
        return err(cur.pos, "expected two index digits after '.'");
    }
    if !ends_term(cur.peek()) {
        return err(cur.pos, "unexpected character after index digits");
    }
    finish(coef, &idx, istart)
}

fn finish(coef: ScalarPoly, idx: &str, pos: usize) -> Result<RawTerm> {
    let b = idx.as_bytes();
    let i = (b[0] - b'0') as usize;
    let j = (b[1] - b'0') as usize;
    Ok(RawTerm { coef, i, j, pos })
}

fn parse_entry(cur: &mut Cursor<'_>) -> Result<Vec<RawTerm>> {
    cur.skip_ws();
    if cur.peek() == Some('0') && {
        let mut k = 1;
        while cur.peek_at(k).is_some_and(char::is_whitespace) {
            k += 1;
        }
        matches!(cur.peek_at(k), Some(',') | Some(')'))
    } {
        cur.bump();
        cur.skip_ws();
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        let neg = match cur.peek() {
            Some('+') if !first => {
                cur.bump();
                false
            }
            Some(c) if is_minus(c) => {
                cur.bump();
                true
            }
            _ if first => false,
            _ => break,
        };
        cur.skip_ws();
        let mut t = parse_term(cur)?;
        if neg {
            t.coef = -t.coef;
        }
        terms.push(t);
        first = false;
        cur.skip_ws();
        match cur.peek() {
            Some('+') => continue,
            Some(c) if is_minus(c) => continue,
            _ => break,
        }
    }
    Ok(terms)
}

/// Parse compact notation into an algebra.
pub fn parse(text: &str) -> Result<LieAlgebra> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.bump() != Some('(') {
        return Err(Error::Syntax {
            position: 0,
            message: "expected '('".into(),
        });
    }
    let mut entries = Vec::new();
    loop {
        entries.push(parse_entry(&mut cur)?);
        cur.skip_ws();
        match cur.bump() {
            Some(',') => continue,
            Some(')') => break,
            Some(c) => {
                return Err(Error::Syntax {
                    position: cur.pos - 1,
                    message: format!("expected ',' or ')', found '{c}'"),
                })
            }
            None => return Err(cur.err("unexpected end of input; expected ')'")),
        }
    }
    let mut extra = 0;
    loop {
        cur.skip_ws();
        match (cur.peek(), cur.peek_at(1)) {
            (Some('x') | Some('×'), Some('R')) => {
                cur.bump();
                cur.bump();
                extra += 1;
            }
            (None, _) => break,
            _ => return Err(cur.err("unexpected trailing input")),
        }
    }
    let n = entries.len() + extra;
    if n > 9 {
        return Err(Error::Syntax {
            position: 0,
            message: "compact notation supports at most 9 dimensions".into(),
        });
    }
    let mut d = Vec::with_capacity(n);
    for terms in entries {
        let mut f = Form::zero(n, 2);
        for t in terms {
            for idx in [t.i, t.j] {
                if idx == 0 || idx > n {
                    return Err(Error::IndexOutOfRange { index: idx, dim: n });
                }
            }
            if t.i == t.j {
                return Err(Error::Syntax {
                    position: t.pos,
                    message: format!("repeated index in '{}{}'", t.i, t.j),
                });
            }
            f = &f + &Form::from_terms(n, 2, [(vec![t.i, t.j], t.coef)])?;
        }
        d.push(f);
    }
    d.resize(n, Form::zero(n, 2));
    LieAlgebra::new(d)
}

/// Parse and require a given dimension.
pub fn parse_with_dim(text: &str, dim: usize) -> Result<LieAlgebra> {
    let alg = parse(text)?;
    if alg.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: alg.dim(),
        });
    }
    Ok(alg)
}

fn simple_name(v: &str) -> bool {
    !v.is_empty() && v.chars().all(|c| c.is_ascii_alphabetic())
}

/// Coefficient text (without sign) and whether a '.' must follow.
fn coef_text(c: &ScalarPoly) -> (bool, String, bool) {
    if let Some(q) = c.as_constant() {
        let neg = q.is_negative();
        let a = q.abs();
        if a.is_one() {
            return (neg, String::new(), false);
        }
        return (neg, fmt_rational(&a), true);
    }
    if c.num_terms() == 1 {
        let (m, q) = c.leading().expect("non-zero");
        let p = m.powers();
        if p.len() == 1 && p[0].1 == 1 && simple_name(&p[0].0) {
            let neg = q.is_negative();
            let a = q.abs();
            if a.is_one() {
                return (neg, p[0].0.to_string(), false);
            }
            return (neg, format!("{}{}", fmt_rational(&a), p[0].0), true);
        }
    }
    let neg = c.leading().is_some_and(|(_, q)| q.is_negative());
    let shown = if neg { -c } else { c.clone() };
    (neg, format!("({shown})"), false)
}

/// Canonical compact notation. Terms come in increasing (i, j) order and
/// are written as `ji` with the coefficient negated.
pub fn print(alg: &LieAlgebra) -> Result<String> {
    let n = alg.dim();
    if n > 9 {
        return Err(Error::Unprintable(format!("dimension {n} needs two-digit indices")));
    }
    let mut out = String::from("(");
    for (k, f) in alg.d_basis().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        if f.is_zero() {
            out.push('0');
            continue;
        }
        for (t, (b, c)) in f.terms().enumerate() {
            let idx = b.indices();
            let (neg, text, dot) = coef_text(&-c);
            if neg {
                out.push('-');
            } else if t > 0 {
                out.push('+');
            }
            out.push_str(&text);
            if dot {
                out.push('.');
            }
            out.push_str(&format!("{}{}", idx[1], idx[0]));
        }
    }
    out.push(')');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg() {
        let g = parse("(0,0,21)").unwrap();
        assert_eq!(g.d_basis()[2], Form::basis(3, &[2, 1]));
        assert_eq!(print(&g).unwrap(), "(0,0,21)");
    }

    #[test]
    fn parameters_and_dots() {
        let g = parse("(0,λ21+31,−21+λ31,2λ.41+32)").unwrap();
        let l = ScalarPoly::var("lambda");
        let expect = &Form::basis(4, &[4, 1]).scale(&l.scale(&Rational::from_integer(2.into())))
            + &Form::basis(4, &[3, 2]);
        assert_eq!(g.d_basis()[3], expect);
        assert_eq!(print(&g).unwrap(), "(0,lambda21+31,-21+lambda31,2lambda.41+32)");
        assert_eq!(parse(&print(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn digit_prefix_coefficients() {
        let a = parse("(0,0,0,2.41+32)").unwrap();
        let b = parse("(0,0,0,241+32)").unwrap();
        assert_eq!(a, b);
        let c = parse("(0,21,1/2.31)").unwrap();
        assert_eq!(c.d_basis()[2].coefficient(&[3, 1]), "1/2".parse().unwrap());
        let d = parse("(0,21,λ/231)").unwrap();
        assert_eq!(d.d_basis()[2].coefficient(&[3, 1]), "lambda/2".parse().unwrap());
    }

    #[test]
    fn polynomial_coefficients() {
        let g = parse("(0,lambda21,(1-lambda)31,41+32)").unwrap();
        let s = print(&g).unwrap();
        assert_eq!(s, "(0,lambda21,-(lambda - 1)31,41+32)");
        assert_eq!(parse(&s).unwrap(), g);
    }

    #[test]
    fn product_suffix() {
        let g = parse("(0,0,21)xR").unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(print(&g).unwrap(), "(0,0,21,0)");
        assert_eq!(parse("(0,21)xRxR").unwrap().dim(), 4);
    }

    #[test]
    fn diagnostics() {
        let err = |s: &str| match parse(s) {
            Err(Error::Syntax { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(err("(0,2)"), 3);
        assert_eq!(err("(0,21"), 5);
        assert_eq!(err("(0,2#1)"), 4);
        assert!(matches!(parse("(0,31)"), Err(Error::IndexOutOfRange { index: 3, dim: 2 })));
        assert!(parse_with_dim("(0,21)", 3).is_err());
    }
}
