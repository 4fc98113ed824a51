//! Exact scalars: arbitrary-precision rationals and sparse multivariate
//! polynomials over them.
//!
//! Polynomials are stored as a map from [`Monomial`] to a non-zero
//! [`Rational`] coefficient. Monomials are ordered graded-lexicographically
//! with variables compared by name, which makes every printed form and
//! every linear-algebra matrix built from polynomials deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Evaluation point: a rational value per variable name.
pub type Point = BTreeMap<String, Rational>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Extreme magnitudes: scale both sides down before converting.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Best rational approximation with bounded denominator (continued fractions).
pub fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// A power product of named variables; exponents are strictly positive and
/// variables are sorted by name.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Arc<str>, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(Arc::from(name), 1)])
    }

    pub fn from_powers<I: IntoIterator<Item = (Arc<str>, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<Arc<str>, u32> = BTreeMap::new();
        for (v, e) in powers {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &[(Arc<str>, u32)] {
        &self.0
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| v.as_ref() == var)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Drop `var` from the monomial, returning the removed exponent.
    fn split_off(&self, var: &str) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(v, x)| {
                if v.as_ref() == var {
                    e = *x;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (Monomial(rest), e)
    }

    /// All monomials in `vars` of total degree at most `max_deg`, in
    /// ascending graded-lex order.
    pub fn all_up_to(vars: &[Arc<str>], max_deg: u32) -> Vec<Monomial> {
        fn rec(
            vars: &[Arc<str>],
            idx: usize,
            left: u32,
            cur: &mut Vec<(Arc<str>, u32)>,
            out: &mut Vec<Monomial>,
        ) {
            if idx == vars.len() {
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                if e > 0 {
                    cur.push((vars[idx].clone(), e));
                }
                rec(vars, idx + 1, left - e, cur, out);
                if e > 0 {
                    cur.pop();
                }
            }
        }
        let mut sorted = vars.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut out = Vec::new();
        rec(&sorted, 0, max_deg, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // Lex: the first variable (by name) where exponents differ decides;
        // a larger exponent on an earlier variable is the larger monomial.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarPoly({self})")
    }
}

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut p = Self::zero();
        p.terms.insert(Monomial::var(name), Rational::one());
        p
    }

    pub fn from_term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(
                self.terms
                    .get(&Monomial::one())
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> BTreeSet<Arc<str>> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        ScalarPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute polynomials for variables; unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<String, ScalarPoly>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = ScalarPoly::constant(c.clone());
            let mut kept = Vec::new();
            for (v, e) in &m.0 {
                match map.get(v.as_ref()) {
                    Some(p) => term = &term * &p.pow(*e),
                    None => kept.push((v.clone(), *e)),
                }
            }
            out += &term.mul_monomial(&Monomial(kept));
        }
        out
    }

    /// Substitute rational values for the variables present in `point`.
    pub fn evaluate(&self, point: &Point) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut kept = Vec::new();
            for (v, e) in &m.0 {
                match point.get(v.as_ref()) {
                    Some(x) => {
                        for _ in 0..*e {
                            coef *= x;
                        }
                    }
                    None => kept.push((v.clone(), *e)),
                }
            }
            out.add_term(Monomial(kept), coef);
        }
        out
    }

    /// Evaluate fully at `point`; errors if a variable is left unassigned.
    pub fn evaluate_constant(&self, point: &Point) -> Result<Rational> {
        let p = self.evaluate(point);
        p.as_constant().ok_or_else(|| Error::Parametric {
            what: format!(
                "unassigned variables {:?}",
                p.variables().iter().map(|v| v.to_string()).collect::<Vec<_>>()
            ),
        })
    }

    pub fn eval_f64(&self, values: &BTreeMap<String, f64>) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().fold(rational_to_f64(c), |acc, (v, e)| {
                    acc * values.get(v.as_ref()).copied().unwrap_or(f64::NAN).powi(*e as i32)
                })
            })
            .sum()
    }

    /// Reduce modulo `var^2 - replacement`, where `replacement` does not
    /// involve `var`. Used for exact identities on conics such as
    /// `q^2 + r^2 = 1`.
    pub fn reduce_square(&self, var: &str, replacement: &ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(var);
            let mut term = ScalarPoly::from_term(rest, c.clone()).mul_monomial(&if e % 2 == 1 {
                Monomial::var(var)
            } else {
                Monomial::one()
            });
            if e >= 2 {
                term = &term * &replacement.pow(e / 2);
            }
            out += &term;
        }
        out
    }

    pub fn derivative(&self, var: &str) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(var);
            if e == 0 {
                continue;
            }
            let m2 = rest.mul(&Monomial::from_powers([(Arc::from(var), e - 1)]));
            out.add_term(m2, c * int(e as i64));
        }
        out
    }

    /// Divide every coefficient by the leading one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }
}

impl From<Rational> for ScalarPoly {
    fn from(c: Rational) -> Self {
        ScalarPoly::constant(c)
    }
}

impl From<i64> for ScalarPoly {
    fn from(n: i64) -> Self {
        ScalarPoly::int(n)
    }
}

impl AddAssign<&ScalarPoly> for ScalarPoly {
    fn add_assign(&mut self, rhs: &ScalarPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&ScalarPoly> for ScalarPoly {
    fn sub_assign(&mut self, rhs: &ScalarPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ScalarPoly {
            type Output = ScalarPoly;
            fn $f(self, rhs: ScalarPoly) -> ScalarPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&ScalarPoly> for ScalarPoly {
            type Output = ScalarPoly;
            fn $f(self, rhs: &ScalarPoly) -> ScalarPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<ScalarPoly> for &ScalarPoly {
            type Output = ScalarPoly;
            fn $f(self, rhs: ScalarPoly) -> ScalarPoly {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        -&self
    }
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl FromStr for ScalarPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::expr::parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ScalarPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_cancels_exactly() {
        let x = ScalarPoly::var("x");
        let one = ScalarPoly::one();
        let prod = &(&x + &one) * &(&x - &one);
        assert_eq!(prod, p("x^2 - 1"));
        assert!((&prod - &p("x^2-1")).is_zero());
    }

    #[test]
    fn grlex_order_and_display() {
        let q = p("y + x^2 + 3 - 2/3*x*y");
        assert_eq!(q.to_string(), "x^2 - 2/3*x*y + y + 3");
        assert_eq!(q.degree(), 2);
    }

    #[test]
    fn degree_zero_round_trips_with_rational() {
        let c = rat(-7, 3);
        let q = ScalarPoly::constant(c.clone());
        assert_eq!(q.as_constant(), Some(c));
        assert_eq!(ScalarPoly::zero().as_constant(), Some(Rational::zero()));
    }

    #[test]
    fn evaluate_partial_and_full() {
        let q = p("x*y + t");
        let mut pt = Point::new();
        pt.insert("x".into(), int(2));
        assert_eq!(q.evaluate(&pt), p("2*y + t"));
        pt.insert("y".into(), rat(1, 2));
        pt.insert("t".into(), int(-1));
        assert_eq!(q.evaluate_constant(&pt).unwrap(), int(0));
    }

    #[test]
    fn circle_reduction() {
        let q = p("q^2 + r^2 - 1");
        let rep = p("1 - q^2");
        assert!(q.reduce_square("r", &rep).is_zero());
        let cubic = p("r^3 + q^2*r");
        assert_eq!(cubic.reduce_square("r", &rep), p("r"));
    }

    #[test]
    fn sqrt_and_rationalize() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rationalize(-0.125, 1000), Some(rat(-1, 8)));
    }

    #[test]
    fn all_monomials_count() {
        let vars: Vec<Arc<str>> = ["a", "b", "c"].iter().map(|s| Arc::from(*s)).collect();
        // C(3+2, 2) = 10 monomials of degree <= 2 in 3 variables.
        assert_eq!(Monomial::all_up_to(&vars, 2).len(), 10);
    }
}
