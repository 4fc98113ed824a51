//! Identification of solvable Lie algebras of dimension at most four with
//! the standard list, by exact invariants at a rational point.

use std::fmt;

use nalgebra::Matrix3;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::algebra::{Concrete, LieAlgebra, Subspace};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::notation;
use crate::poly::{fmt_rational, int, rat, rational_sqrt, rational_to_f64, rationalize, Point, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Abelian(usize),
    AffR,
    H3,
    R3,
    R3Lambda,
    R3pLambda,
    RxH3,
    RxR3,
    RxR3Lambda,
    RxR3pLambda,
    AffRxAffR,
    N4,
    AffC,
    R4,
    R4Lambda,
    R4MuLambda,
    R4pMuLambda,
    D4,
    D4Lambda,
    D4pLambda,
    H4,
}

impl Tag {
    pub fn as_str(&self) -> String {
        match self {
            Tag::Abelian(n) => format!("R^{n}"),
            Tag::AffR => "aff_R".into(),
            Tag::H3 => "h3".into(),
            Tag::R3 => "r3".into(),
            Tag::R3Lambda => "r3_lambda".into(),
            Tag::R3pLambda => "r3p_lambda".into(),
            Tag::RxH3 => "R_x_h3".into(),
            Tag::RxR3 => "R_x_r3".into(),
            Tag::RxR3Lambda => "R_x_r3_lambda".into(),
            Tag::RxR3pLambda => "R_x_r3p_lambda".into(),
            Tag::AffRxAffR => "aff_R_x_aff_R".into(),
            Tag::N4 => "n4".into(),
            Tag::AffC => "aff_C".into(),
            Tag::R4 => "r4".into(),
            Tag::R4Lambda => "r4_lambda".into(),
            Tag::R4MuLambda => "r4_mu_lambda".into(),
            Tag::R4pMuLambda => "r4p_mu_lambda".into(),
            Tag::D4 => "d4".into(),
            Tag::D4Lambda => "d4_lambda".into(),
            Tag::D4pLambda => "d4p_lambda".into(),
            Tag::H4 => "h4".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Tag> {
        if let Some(n) = s.strip_prefix("R^") {
            return n
                .parse()
                .map(Tag::Abelian)
                .map_err(|_| Error::Unknown(s.into()));
        }
        Ok(match s {
            "aff_R" => Tag::AffR,
            "h3" => Tag::H3,
            "r3" => Tag::R3,
            "r3_lambda" => Tag::R3Lambda,
            "r3p_lambda" => Tag::R3pLambda,
            "R_x_h3" => Tag::RxH3,
            "R_x_r3" => Tag::RxR3,
            "R_x_r3_lambda" => Tag::RxR3Lambda,
            "R_x_r3p_lambda" => Tag::RxR3pLambda,
            "aff_R_x_aff_R" => Tag::AffRxAffR,
            "n4" => Tag::N4,
            "aff_C" => Tag::AffC,
            "r4" => Tag::R4,
            "r4_lambda" => Tag::R4Lambda,
            "r4_mu_lambda" => Tag::R4MuLambda,
            "r4p_mu_lambda" => Tag::R4pMuLambda,
            "d4" => Tag::D4,
            "d4_lambda" => Tag::D4Lambda,
            "d4p_lambda" => Tag::D4pLambda,
            "h4" => Tag::H4,
            _ => return Err(Error::Unknown(s.into())),
        })
    }

    /// Parameter names, in order.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Tag::R3Lambda
            | Tag::R3pLambda
            | Tag::RxR3Lambda
            | Tag::RxR3pLambda
            | Tag::R4Lambda
            | Tag::D4Lambda
            | Tag::D4pLambda => &["lambda"],
            Tag::R4MuLambda | Tag::R4pMuLambda => &["mu", "lambda"],
            _ => &[],
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Tag::Abelian(n) => *n,
            Tag::AffR => 2,
            Tag::H3 | Tag::R3 | Tag::R3Lambda | Tag::R3pLambda => 3,
            _ => 4,
        }
    }

    /// Compact notation with symbolic parameters `lambda`, `mu`.
    pub fn template(&self) -> String {
        match self {
            Tag::Abelian(n) => format!("({})", vec!["0"; *n].join(",")),
            Tag::AffR => "(0,21)".into(),
            Tag::H3 => "(0,0,21)".into(),
            Tag::R3 => "(0,21+31,31)".into(),
            Tag::R3Lambda => "(0,21,λ31)".into(),
            Tag::R3pLambda => "(0,λ21+31,-21+λ31)".into(),
            Tag::RxH3 => "(0,0,21)xR".into(),
            Tag::RxR3 => "(0,21+31,31)xR".into(),
            Tag::RxR3Lambda => "(0,21,λ31)xR".into(),
            Tag::RxR3pLambda => "(0,λ21+31,-21+λ31)xR".into(),
            Tag::AffRxAffR => "(0,21,0,43)".into(),
            Tag::N4 => "(0,0,21,31)".into(),
            Tag::AffC => "(0,0,31-42,41+32)".into(),
            Tag::R4 => "(0,21+31,31+41,41)".into(),
            Tag::R4Lambda => "(0,21,λ31+41,λ41)".into(),
            Tag::R4MuLambda => "(0,21,μ31,λ41)".into(),
            Tag::R4pMuLambda => "(0,μ21,λ31+41,-31+λ41)".into(),
            Tag::D4 => "(0,21,-31,32)".into(),
            Tag::D4Lambda => "(0,λ21,(1-λ)31,41+32)".into(),
            Tag::D4pLambda => "(0,λ21+31,-21+λ31,2λ.41+32)".into(),
            Tag::H4 => "(0,21+31,31,2.41+32)".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Param {
    Exact(Rational),
    Approx(f64),
}

impl Param {
    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Exact(q) => rational_to_f64(q),
            Param::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Param::Exact(q) => Some(q),
            Param::Approx(_) => None,
        }
    }
}

impl PartialEq for Param {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Param::Exact(a), Param::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= 1e-9 * (1.0 + self.to_f64().abs()),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Exact(q) => write!(f, "{}", fmt_rational(q)),
            Param::Approx(x) => write!(f, "~{x:.12}"),
        }
    }
}

/// An isomorphism class from the standard list with normalized parameters
/// (in the order of [`Tag::param_names`]).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraId {
    pub tag: Tag,
    pub params: Vec<Param>,
}

impl AlgebraId {
    pub fn new(tag: Tag) -> Self {
        AlgebraId {
            tag,
            params: Vec::new(),
        }
    }

    pub fn with(tag: Tag, params: Vec<Rational>) -> Self {
        AlgebraId {
            tag,
            params: params.into_iter().map(Param::Exact).collect(),
        }
    }

    pub fn param(&self, name: &str) -> Option<&Param> {
        self.tag
            .param_names()
            .iter()
            .position(|n| *n == name)
            .and_then(|i| self.params.get(i))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("id".into(), json!(self.tag.as_str()));
        for (name, p) in self.tag.param_names().iter().zip(&self.params) {
            let v = match p {
                Param::Exact(q) => json!(fmt_rational(q)),
                Param::Approx(x) => json!(x),
            };
            m.insert((*name).into(), v);
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<AlgebraId> {
        let id = v
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Json("missing \"id\"".into()))?;
        let tag = Tag::parse(id)?;
        let mut params = Vec::new();
        for name in tag.param_names() {
            let p = match v.get(*name) {
                Some(Value::String(s)) => {
                    let poly: crate::poly::ScalarPoly = s.parse()?;
                    Param::Exact(
                        poly.as_constant()
                            .ok_or_else(|| Error::Json(format!("{name} must be a number")))?,
                    )
                }
                Some(Value::Number(n)) => Param::Approx(n.as_f64().unwrap_or(f64::NAN)),
                _ => return Err(Error::Json(format!("missing parameter {name}"))),
            };
            params.push(p);
        }
        Ok(AlgebraId { tag, params })
    }

    /// Check the parameter ranges of the standard tables.
    pub fn validate(&self) -> Result<()> {
        if self.params.len() != self.tag.param_names().len() {
            return Err(Error::Inadmissible(format!(
                "{} takes {} parameter(s)",
                self.tag.as_str(),
                self.tag.param_names().len()
            )));
        }
        let v: Vec<f64> = self.params.iter().map(Param::to_f64).collect();
        let bad = |why: &str| Err(Error::Inadmissible(format!("{}: {why}", self)));
        match self.tag {
            Tag::R3Lambda | Tag::RxR3Lambda if v[0].abs() > 1.0 => bad("|lambda| <= 1"),
            Tag::R3pLambda | Tag::RxR3pLambda | Tag::D4pLambda if v[0] < 0.0 => {
                bad("lambda >= 0")
            }
            Tag::D4Lambda if v[0] < 0.5 => bad("lambda >= 1/2"),
            Tag::R4pMuLambda if v[0] <= 0.0 => bad("mu > 0"),
            Tag::R4MuLambda => {
                let (mu, la) = (&self.params[0], &self.params[1]);
                if in_r4(mu, la) {
                    Ok(())
                } else {
                    bad("(mu, lambda) outside the admissible region")
                }
            }
            _ => Ok(()),
        }
    }
}

/// -1 <= mu <= lambda <= 1, mu, lambda ≠ 0, lambda < 0 when mu = -1.
fn in_r4(mu: &Param, la: &Param) -> bool {
    match (mu, la) {
        (Param::Exact(m), Param::Exact(l)) => {
            let one = Rational::one();
            !m.is_zero()
                && !l.is_zero()
                && m >= &-one.clone()
                && l <= &one
                && m <= l
                && (m != &-one || l.is_negative())
        }
        _ => {
            let (m, l) = (mu.to_f64(), la.to_f64());
            let e = 1e-12;
            m.abs() > e && l.abs() > e && m >= -1.0 - e && l <= 1.0 + e && m <= l + e
                && ((m + 1.0).abs() > e || l < 0.0)
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag.as_str())?;
        if !self.params.is_empty() {
            write!(f, "(")?;
            for (k, (n, p)) in self.tag.param_names().iter().zip(&self.params).enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{n}={p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// The table representative of an identifier (exact parameters only).
pub fn construct(id: &AlgebraId) -> Result<LieAlgebra> {
    id.validate()?;
    let alg = notation::parse(&id.tag.template())?;
    let mut point = Point::new();
    for (name, p) in id.tag.param_names().iter().zip(&id.params) {
        let q = p.exact().ok_or_else(|| {
            Error::Inadmissible(format!("{name} must be exact to build {}", id.tag.as_str()))
        })?;
        point.insert((*name).to_string(), q.clone());
    }
    Ok(alg.evaluate(&point).with_name(id.to_string()))
}

/// Identify `alg` evaluated at `point`.
pub fn identify(alg: &LieAlgebra, point: &Point) -> Result<AlgebraId> {
    if alg.dim() > 4 || alg.dim() == 0 {
        return Err(Error::Unrecognized(format!("dimension {}", alg.dim())));
    }
    let c = Concrete::new(alg, point)?;
    if !alg.evaluate(point).jacobi_check().is_empty() {
        return Err(Error::Unrecognized("Jacobi identity fails".into()));
    }
    if !c.is_solvable() {
        return Err(Error::NotSolvable);
    }
    identify_concrete(&c)
}

fn constant(alg: &LieAlgebra) -> Result<AlgebraId> {
    identify(alg, &Point::new())
}

fn outside(c: &Concrete, s: &Subspace) -> Vec<Rational> {
    (0..c.dim())
        .map(|i| {
            let mut v = vec![Rational::zero(); c.dim()];
            v[i] = Rational::one();
            v
        })
        .find(|v| !s.contains(v))
        .expect("proper subspace")
}

/// ad_X restricted to an invariant subspace, in the subspace's basis.
fn restricted_ad(c: &Concrete, x: &[Rational], s: &Subspace) -> QMatrix {
    let cols = QMatrix::from_columns(c.dim(), s.basis());
    let images: Vec<Vec<Rational>> = s
        .basis()
        .iter()
        .map(|b| cols.solve(&c.bracket(x, b)).expect("invariant subspace"))
        .collect();
    QMatrix::from_columns(s.dim(), &images)
}

fn identify_concrete(c: &Concrete) -> Result<AlgebraId> {
    let n = c.dim();
    let gp = c.derived_algebra();
    match (n, gp.dim()) {
        (_, 0) => Ok(AlgebraId::new(Tag::Abelian(n))),
        (1, _) => unreachable!("one-dimensional algebras are abelian"),
        (2, _) => Ok(AlgebraId::new(Tag::AffR)),
        (3, 1) => {
            if c.is_nilpotent() {
                Ok(AlgebraId::new(Tag::H3))
            } else {
                Ok(AlgebraId::with(Tag::R3Lambda, vec![int(0)]))
            }
        }
        (3, 2) => {
            let x = outside(c, &gp);
            identify_dim3_g2(&restricted_ad(c, &x, &gp))
        }
        (4, 1) => {
            if c.is_nilpotent() {
                Ok(AlgebraId::new(Tag::RxH3))
            } else {
                Ok(AlgebraId::with(Tag::RxR3Lambda, vec![int(0)]))
            }
        }
        (4, 2) => identify_dim4_g2(c, &gp),
        (4, 3) => {
            let gpa = c.restrict(&gp)?;
            let inner = Concrete::new(&gpa, &Point::new())?;
            if inner.derived_algebra().dim() == 0 {
                let x = outside(c, &gp);
                identify_dim4_g3_abelian(&restricted_ad(c, &x, &gp))
            } else {
                identify_dim4_h3(c, &gp)
            }
        }
        _ => Err(Error::Unrecognized(format!(
            "dimension {n} with derived algebra of dimension {}",
            gp.dim()
        ))),
    }
}

/// 3-dimensional algebras with g' = R², from M = ad_X|g'.
fn identify_dim3_g2(m: &QMatrix) -> Result<AlgebraId> {
    let tau = m.trace();
    let delta = m.det();
    let disc = &tau * &tau - &delta * int(4);
    if disc.is_positive() {
        if tau.is_zero() {
            return Ok(AlgebraId::with(Tag::R3Lambda, vec![int(-1)]));
        }
        let lam = match rational_sqrt(&disc) {
            Some(s) => {
                let e1 = (&tau + &s) / int(2);
                let e2 = (&tau - &s) / int(2);
                let (big, small) = if e1.abs() >= e2.abs() { (e1, e2) } else { (e2, e1) };
                Param::Exact(small / big)
            }
            None => {
                let (t, s) = (rational_to_f64(&tau), rational_to_f64(&disc).sqrt());
                let (e1, e2) = ((t + s) / 2.0, (t - s) / 2.0);
                let (big, small) = if e1.abs() >= e2.abs() { (e1, e2) } else { (e2, e1) };
                Param::Approx(small / big)
            }
        };
        Ok(AlgebraId {
            tag: Tag::R3Lambda,
            params: vec![lam],
        })
    } else if disc.is_zero() {
        let half = &tau / int(2);
        let scalar = m[(0, 1)].is_zero() && m[(1, 0)].is_zero() && m[(0, 0)] == half;
        if scalar {
            Ok(AlgebraId::with(Tag::R3Lambda, vec![int(1)]))
        } else {
            Ok(AlgebraId::new(Tag::R3))
        }
    } else {
        let den = &delta * int(4) - &tau * &tau;
        let sq = &tau * &tau / &den;
        let lam = match rational_sqrt(&sq) {
            Some(l) => Param::Exact(l),
            None => Param::Approx(rational_to_f64(&sq).sqrt()),
        };
        Ok(AlgebraId {
            tag: Tag::R3pLambda,
            params: vec![lam],
        })
    }
}

fn identify_dim4_g2(c: &Concrete, _gp: &Subspace) -> Result<AlgebraId> {
    let z = c.center();
    if z.dim() == 0 {
        let u = c.unimodular_kernel();
        if u.dim() != 3 {
            return Err(Error::Unrecognized("g' = R^2 with trivial centre, unimodular".into()));
        }
        let inner = constant(&c.restrict(&u)?)?;
        return match inner.tag {
            Tag::R3Lambda if inner.params[0] == Param::Exact(int(-1)) => {
                Ok(AlgebraId::new(Tag::AffRxAffR))
            }
            Tag::H3 => Ok(AlgebraId::with(Tag::D4Lambda, vec![int(1)])),
            Tag::R3pLambda if inner.params[0] == Param::Exact(int(0)) => {
                Ok(AlgebraId::new(Tag::AffC))
            }
            _ => Err(Error::Unrecognized(format!("unimodular kernel {inner}"))),
        };
    }
    if c.is_nilpotent() {
        return Ok(AlgebraId::new(Tag::N4));
    }
    if z.is_subspace_of(&c.derived_algebra()) {
        return Ok(AlgebraId::with(Tag::R4Lambda, vec![int(0)]));
    }
    let q = constant(&c.quotient(&z)?)?;
    let tag = match q.tag {
        Tag::R3 => Tag::RxR3,
        Tag::R3Lambda => Tag::RxR3Lambda,
        Tag::R3pLambda => Tag::RxR3pLambda,
        _ => return Err(Error::Unrecognized(format!("g/z(g) = {q}"))),
    };
    Ok(AlgebraId {
        tag,
        params: q.params,
    })
}

fn identify_dim4_h3(c: &Concrete, gp: &Subspace) -> Result<AlgebraId> {
    let gpa = c.restrict(gp)?;
    let zc = Concrete::new(&gpa, &Point::new())?.center();
    // Back to ambient coordinates.
    let vecs: Vec<Vec<Rational>> = zc
        .basis()
        .iter()
        .map(|w| {
            let mut v = vec![Rational::zero(); c.dim()];
            for (a, b) in w.iter().zip(gp.basis()) {
                for (k, x) in b.iter().enumerate() {
                    v[k] += a * x;
                }
            }
            v
        })
        .collect();
    let z = Subspace::span(c.dim(), &vecs);
    let q = constant(&c.quotient(&z)?)?;
    match q.tag {
        Tag::R3Lambda => match &q.params[0] {
            Param::Exact(nu) if *nu == int(-1) => Ok(AlgebraId::new(Tag::D4)),
            Param::Exact(nu) => Ok(AlgebraId::with(
                Tag::D4Lambda,
                vec![Rational::one() / (Rational::one() + nu)],
            )),
            Param::Approx(nu) => {
                if (nu + 1.0).abs() < 1e-9 {
                    return Err(Error::Ambiguous(format!("g/z(g') = {q} is near r_(3,-1)")));
                }
                Ok(AlgebraId {
                    tag: Tag::D4Lambda,
                    params: vec![Param::Approx(1.0 / (1.0 + nu))],
                })
            }
        },
        Tag::R3pLambda => Ok(AlgebraId {
            tag: Tag::D4pLambda,
            params: q.params,
        }),
        Tag::R3 => Ok(AlgebraId::new(Tag::H4)),
        _ => Err(Error::Unrecognized(format!("g/z(g') = {q}"))),
    }
}

#[derive(Clone, Debug)]
enum Eig {
    Rat(Rational),
    Irr(f64),
}

impl Eig {
    fn f(&self) -> f64 {
        match self {
            Eig::Rat(q) => rational_to_f64(q),
            Eig::Irr(x) => *x,
        }
    }
}

fn cubic_eval(c2: &Rational, c1: &Rational, c0: &Rational, x: &Rational) -> Rational {
    ((x - c2) * x + c1) * x - c0
}

/// Real roots of x² - s x + p: exact if the discriminant is a square.
fn quadratic_real(s: &Rational, p: &Rational) -> Option<(Eig, Eig)> {
    let disc = s * s - p * int(4);
    if disc.is_negative() {
        return None;
    }
    Some(match rational_sqrt(&disc) {
        Some(r) => (Eig::Rat((s + &r) / int(2)), Eig::Rat((s - &r) / int(2))),
        None => {
            let (sf, rf) = (rational_to_f64(s), rational_to_f64(&disc).sqrt());
            (Eig::Irr((sf + rf) / 2.0), Eig::Irr((sf - rf) / 2.0))
        }
    })
}

fn to_nalgebra(m: &QMatrix) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| rational_to_f64(&m[(i, j)]))
}

/// g' = R³ abelian: from the eigen-structure of M = ad_X|g'.
fn identify_dim4_g3_abelian(m: &QMatrix) -> Result<AlgebraId> {
    let c2 = m.trace();
    let c0 = m.det();
    let c1 = {
        let idx = [(0, 1), (0, 2), (1, 2)];
        idx.iter().fold(Rational::zero(), |acc, &(i, j)| {
            acc + &m[(i, i)] * &m[(j, j)] - &m[(i, j)] * &m[(j, i)]
        })
    };
    if c0.is_zero() {
        return Err(Error::Unrecognized("ad_X singular on g'".into()));
    }
    // Discriminant of x³ - c2 x² + c1 x - c0.
    let (b, cc, d) = (-c2.clone(), c1.clone(), -c0.clone());
    let disc = int(18) * &b * &cc * &d - int(4) * &b * &b * &b * &d + &b * &b * &cc * &cc
        - int(4) * &cc * &cc * &cc
        - int(27) * &d * &d;
    let rank_shift = |a: &Rational| {
        let mut s = m.clone();
        for i in 0..3 {
            s[(i, i)] -= a;
        }
        s.rank()
    };
    if disc.is_zero() {
        let h = &c2 * &c2 - &c1 * int(3);
        if h.is_zero() {
            let a = &c2 / int(3);
            return Ok(match rank_shift(&a) {
                0 => AlgebraId::with(Tag::R4MuLambda, vec![int(1), int(1)]),
                1 => AlgebraId::with(Tag::R4Lambda, vec![int(1)]),
                _ => AlgebraId::new(Tag::R4),
            });
        }
        let alpha = (&c1 * &c2 - &c0 * int(9)) / (h * int(2));
        let beta = &c2 - &alpha * int(2);
        if rank_shift(&alpha) == 1 {
            return mu_lambda_from(&[Eig::Rat(beta), Eig::Rat(alpha.clone()), Eig::Rat(alpha)]);
        }
        return Ok(AlgebraId::with(Tag::R4Lambda, vec![alpha / beta]));
    }
    // Find a rational root among the numerical real ones, then deflate.
    let ev = to_nalgebra(m).complex_eigenvalues();
    let mut real_root = None;
    for z in ev.iter() {
        if z.im.abs() > 1e-7 * (1.0 + z.re.abs()) {
            continue;
        }
        for den in [1i64 << 20, 1 << 40] {
            if let Some(r) = rationalize(z.re, den) {
                if cubic_eval(&c2, &c1, &c0, &r).is_zero() {
                    real_root = Some(r);
                    break;
                }
            }
        }
        if real_root.is_some() {
            break;
        }
    }
    if disc.is_positive() {
        let eigs: Vec<Eig> = match real_root {
            Some(r) => {
                let s = &c2 - &r;
                let p = &c0 / &r;
                let (e1, e2) = quadratic_real(&s, &p).expect("three real roots");
                vec![Eig::Rat(r), e1, e2]
            }
            None => ev.iter().map(|z| Eig::Irr(z.re)).collect(),
        };
        return mu_lambda_from(&eigs);
    }
    // One real eigenvalue beta and a pair rho ± i gamma.
    let (beta, rho, gamma_sq) = match real_root {
        Some(r) => {
            let rho = (&c2 - &r) / int(2);
            let g2 = &c0 / &r - &rho * &rho;
            (Eig::Rat(r), Eig::Rat(rho), Eig::Rat(g2))
        }
        None => {
            let re = ev
                .iter()
                .min_by(|a, b| a.im.abs().total_cmp(&b.im.abs()))
                .expect("three eigenvalues")
                .re;
            let cx = ev
                .iter()
                .max_by(|a, b| a.im.abs().total_cmp(&b.im.abs()))
                .expect("three eigenvalues");
            (Eig::Irr(re), Eig::Irr(cx.re), Eig::Irr(cx.im * cx.im))
        }
    };
    let params = match (&beta, &rho, &gamma_sq) {
        (Eig::Rat(b), Eig::Rat(r), Eig::Rat(g2)) if rational_sqrt(g2).is_some() => {
            let g = rational_sqrt(g2).expect("square");
            let sign = if b.is_negative() { int(-1) } else { int(1) };
            vec![Param::Exact(b.abs() / &g), Param::Exact(r * sign / &g)]
        }
        _ => {
            let g = gamma_sq.f().sqrt();
            let (b, r) = (beta.f(), rho.f());
            vec![Param::Approx(b.abs() / g), Param::Approx(r * b.signum() / g)]
        }
    };
    Ok(AlgebraId {
        tag: Tag::R4pMuLambda,
        params,
    })
}

/// Three real eigenvalues, diagonalizable: pick the normalization landing
/// in the admissible (mu, lambda) region.
fn mu_lambda_from(eigs: &[Eig]) -> Result<AlgebraId> {
    let all_exact: Option<Vec<Rational>> = eigs
        .iter()
        .map(|e| match e {
            Eig::Rat(q) => Some(q.clone()),
            Eig::Irr(_) => None,
        })
        .collect();
    if let Some(v) = all_exact {
        let maxabs = v.iter().map(Signed::abs).max().expect("non-empty");
        for (k, e) in v.iter().enumerate() {
            if e.abs() != maxabs {
                continue;
            }
            let mut rest: Vec<Rational> =
                v.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| x / e).collect();
            rest.sort();
            let (mu, la) = (Param::Exact(rest[0].clone()), Param::Exact(rest[1].clone()));
            if in_r4(&mu, &la) {
                return Ok(AlgebraId {
                    tag: Tag::R4MuLambda,
                    params: vec![mu, la],
                });
            }
        }
        return Err(Error::Unrecognized(format!(
            "no admissible normalization of eigenvalues {:?}",
            v.iter().map(fmt_rational).collect::<Vec<_>>()
        )));
    }
    let v: Vec<f64> = eigs.iter().map(Eig::f).collect();
    let maxabs = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let mut found = Vec::new();
    for (k, e) in v.iter().enumerate() {
        if (e.abs() - maxabs).abs() > 1e-9 * maxabs {
            continue;
        }
        let mut rest: Vec<f64> =
            v.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| x / e).collect();
        rest.sort_by(f64::total_cmp);
        let (mu, la) = (rest[0], rest[1]);
        let near = |a: f64, b: f64| (a - b).abs() < 1e-9;
        if near(mu, -1.0) || near(mu, la) || near(la, 1.0) {
            return Err(Error::Ambiguous(format!(
                "approximate eigenvalue ratios ({mu}, {la}) sit on the boundary"
            )));
        }
        if in_r4(&Param::Approx(mu), &Param::Approx(la)) {
            found.push((mu, la));
        }
    }
    match found.first() {
        Some(&(mu, la)) => Ok(AlgebraId {
            tag: Tag::R4MuLambda,
            params: vec![Param::Approx(mu), Param::Approx(la)],
        }),
        None => Err(Error::Unrecognized("no admissible normalization".into())),
    }
}

/// Sample an admissible parameter vector for a tag from small rationals.
pub fn sample_params(tag: Tag, k: u64) -> Vec<Rational> {
    let pick = |a: i64, b: i64| rat(a, b);
    let s = (k % 97) as i64;
    match tag {
        Tag::R3Lambda | Tag::RxR3Lambda => vec![pick(s % 21 - 10, 10 + (s % 3))],
        Tag::R3pLambda | Tag::RxR3pLambda | Tag::D4pLambda => vec![pick(s % 13, 1 + s % 5)],
        Tag::R4Lambda => vec![pick(s % 17 - 8, 1 + s % 4)],
        Tag::D4Lambda => vec![pick(1 + s % 9, 2)],
        Tag::R4pMuLambda => vec![pick(1 + s % 7, 1 + s % 3), pick(s % 11 - 5, 1 + s % 4)],
        Tag::R4MuLambda => {
            let m = pick(-(1 + (s % 9)), 9);
            let l = pick(1 + (s * 7) % 9, 9) * if s % 2 == 0 { int(1) } else { int(-1) };
            let (m, l) = if m <= l { (m, l) } else { (l, m) };
            vec![m, l]
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id_of(s: &str) -> AlgebraId {
        identify(&notation::parse(s).unwrap(), &Point::new()).unwrap()
    }

    const TAGS: [Tag; 20] = [
        Tag::AffR,
        Tag::H3,
        Tag::R3,
        Tag::R3Lambda,
        Tag::R3pLambda,
        Tag::RxH3,
        Tag::RxR3,
        Tag::RxR3Lambda,
        Tag::RxR3pLambda,
        Tag::AffRxAffR,
        Tag::N4,
        Tag::AffC,
        Tag::R4,
        Tag::R4Lambda,
        Tag::R4MuLambda,
        Tag::R4pMuLambda,
        Tag::D4,
        Tag::D4Lambda,
        Tag::D4pLambda,
        Tag::H4,
    ];

    #[test]
    fn round_trip() {
        for tag in TAGS {
            for k in 0..12 {
                let id = AlgebraId::with(tag, sample_params(tag, k));
                if id.validate().is_err() {
                    continue;
                }
                let alg = construct(&id).unwrap();
                let got = identify(&alg, &Point::new()).unwrap();
                assert_eq!(got, id, "{id}");
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(id_of("(0,21,-31)").to_json().to_string(), r#"{"id":"r3_lambda","lambda":"-1"}"#);
        assert_eq!(id_of("(0,0,21)xR").tag, Tag::RxH3);
        assert_eq!(id_of("(0,21)xR"), AlgebraId::with(Tag::R3Lambda, vec![int(0)]));
        assert_eq!(id_of("(0,2.21,31)"), AlgebraId::with(Tag::R3Lambda, vec![rat(1, 2)]));
        assert_eq!(id_of("(0,-21,-2.31)"), AlgebraId::with(Tag::R3Lambda, vec![rat(1, 2)]));
        assert_eq!(id_of("(0,0,0,0)").tag, Tag::Abelian(4));
        // Eigenvalues -2, 1, 1 normalize to (-1/2, -1/2).
        assert_eq!(
            id_of("(0,-2.21,31,41)"),
            AlgebraId::with(Tag::R4MuLambda, vec![rat(-1, 2), rat(-1, 2)])
        );
        // Irrational eigenvalue ratio.
        let a = id_of("(0,21+31,21)");
        assert_eq!(a.tag, Tag::R3Lambda);
        assert!(matches!(a.params[0], Param::Approx(_)));
    }

    #[test]
    fn json_round_trip() {
        let id = AlgebraId::with(Tag::R4MuLambda, vec![rat(-1, 2), rat(1, 3)]);
        assert_eq!(AlgebraId::from_json(&id.to_json()).unwrap(), id);
    }

    #[test]
    fn non_solvable() {
        let su2 = notation::parse("(32,13,21)").unwrap();
        assert!(matches!(identify(&su2, &Point::new()), Err(Error::NotSolvable)));
    }
}
