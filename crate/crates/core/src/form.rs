//! Homogeneous exterior forms on the dual of an n-dimensional space, the
//! J-action on forms, metrics and the Hodge star.
//!
//! Basis covectors are `e1..en` (1-based, as in the compact notation). A
//! multi-index is stored as a bitmask; iteration order is lexicographic on
//! the increasing index tuple.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{poly_minor, poly_to_q, PolyMatrix, QMatrix};
use crate::poly::{rational_sqrt, Point, Rational, ScalarPoly};

pub const MAX_DIM: usize = 16;

/// Increasing index set, stored as a bitmask (bit i-1 for index i).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Blade(u16);

impl Blade {
    pub fn empty() -> Self {
        Blade(0)
    }

    /// From 1-based indices, which must be distinct.
    pub fn from_indices(idx: &[usize]) -> Self {
        Blade(idx.iter().fold(0u16, |m, &i| m | (1 << (i - 1))))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    /// 1-based increasing indices.
    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Sign of e^self ∧ e^other relative to e^(self ∪ other), or `None`
    /// when the sets overlap.
    pub fn wedge_sign(self, other: Blade) -> Option<i32> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += (self.0 >> (j + 1)).count_ones();
            b &= b - 1;
        }
        Some(if swaps % 2 == 0 { 1 } else { -1 })
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    pub fn complement(self, dim: usize) -> Blade {
        let full = if dim >= 16 { u16::MAX } else { (1u16 << dim) - 1 };
        Blade(full & !self.0)
    }

    /// All index sets of size `k` in `1..=dim`, in lexicographic order.
    pub fn all(dim: usize, k: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = (0u32..(1u32 << dim))
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| Blade(m as u16))
            .collect();
        out.sort();
        out
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on the increasing index tuples.
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a, b) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Less,
                (_, 0) => return Ordering::Greater,
                _ => {
                    let (ia, ib) = (a.trailing_zeros(), b.trailing_zeros());
                    if ia != ib {
                        return ia.cmp(&ib);
                    }
                    a &= a - 1;
                    b &= b - 1;
                }
            }
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign of the permutation sorting `idx`, or `None` if an index repeats.
fn sort_sign(idx: &[usize]) -> Option<(Blade, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            match v[j].cmp(&v[j + 1]) {
                Ordering::Greater => {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
                Ordering::Equal => return None,
                Ordering::Less => {}
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((Blade::from_indices(&v), sign))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    grade: usize,
    coeffs: BTreeMap<Blade, ScalarPoly>,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}; {}]({self})", self.dim, self.grade)
    }
}

impl Form {
    pub fn zero(dim: usize, grade: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Form {
            dim,
            grade,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: ScalarPoly) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(Blade::empty(), c);
        f
    }

    /// The basis covector e_i (1-based).
    pub fn e(dim: usize, i: usize) -> Self {
        Self::basis(dim, &[i])
    }

    /// e_{i1} ∧ ... ∧ e_{ik} for arbitrary (possibly unsorted) indices.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        Self::from_terms(dim, idx.len(), [(idx.to_vec(), ScalarPoly::one())])
            .expect("indices in range")
    }

    /// Sum of `coef · e_{idx}` with arbitrary index order; repeated indices
    /// contribute zero.
    pub fn from_terms<I>(dim: usize, grade: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, ScalarPoly)>,
    {
        let mut f = Self::zero(dim, grade);
        for (idx, c) in terms {
            if idx.len() != grade {
                return Err(Error::DimensionMismatch {
                    expected: grade,
                    found: idx.len(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > dim) {
                return Err(Error::IndexOutOfRange { index: bad, dim });
            }
            if let Some((b, s)) = sort_sign(&idx) {
                f.add_term(b, if s < 0 { -c } else { c });
            }
        }
        Ok(f)
    }

    /// A 1-form from its coefficient vector.
    pub fn one_form(coeffs: &[ScalarPoly]) -> Self {
        let mut f = Self::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(Blade::from_indices(&[i + 1]), c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &ScalarPoly)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn coefficient(&self, idx: &[usize]) -> ScalarPoly {
        match sort_sign(idx) {
            Some((b, s)) => {
                let c = self.coeffs.get(&b).cloned().unwrap_or_default();
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
            None => ScalarPoly::zero(),
        }
    }

    pub fn blade_coefficient(&self, b: Blade) -> ScalarPoly {
        self.coeffs.get(&b).cloned().unwrap_or_default()
    }

    /// Coefficient of e_1∧...∧e_n.
    pub fn top_coefficient(&self) -> ScalarPoly {
        if self.grade != self.dim {
            return ScalarPoly::zero();
        }
        self.blade_coefficient(Blade::empty().complement(self.dim))
    }

    /// Coefficient vector of a 1-form.
    pub fn to_vector(&self) -> Vec<ScalarPoly> {
        assert_eq!(self.grade, 1);
        (1..=self.dim).map(|i| self.coefficient(&[i])).collect()
    }

    pub(crate) fn add_term(&mut self, b: Blade, c: ScalarPoly) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Form) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Form) -> Result<Form> {
        self.check_same(other)?;
        if self.grade != other.grade && !self.is_zero() && !other.is_zero() {
            return Err(Error::DimensionMismatch {
                expected: self.grade,
                found: other.grade,
            });
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        if !self.is_zero() {
            for (b, c) in &other.coeffs {
                out.add_term(*b, c.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ScalarPoly) -> Form {
        let mut out = Form::zero(self.dim, self.grade);
        for (b, x) in &self.coeffs {
            out.add_term(*b, x * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Form {
        let mut out = Form::zero(self.dim, self.grade);
        for (b, x) in &self.coeffs {
            out.add_term(*b, f(x));
        }
        out
    }

    pub fn evaluate(&self, point: &Point) -> Form {
        self.map_coeffs(|c| c.evaluate(point))
    }

    pub fn substitute(&self, map: &BTreeMap<String, ScalarPoly>) -> Form {
        self.map_coeffs(|c| c.substitute(map))
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_same(other)?;
        let mut out = Form::zero(self.dim, self.grade + other.grade);
        if self.grade + other.grade > self.dim {
            return Ok(out);
        }
        for (ba, ca) in &self.coeffs {
            for (bb, cb) in &other.coeffs {
                if let Some(s) = ba.wedge_sign(*bb) {
                    let p = ca * cb;
                    out.add_term(ba.union(*bb), if s < 0 { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// Interior product X⌟α for a vector with polynomial components.
    pub fn contract(&self, x: &[ScalarPoly]) -> Result<Form> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        if self.grade == 0 {
            return Ok(Form::zero(self.dim, 0));
        }
        let mut out = Form::zero(self.dim, self.grade - 1);
        for (b, c) in &self.coeffs {
            for (pos, i) in b.indices().into_iter().enumerate() {
                if x[i - 1].is_zero() {
                    continue;
                }
                let rest = Blade(b.0 & !(1 << (i - 1)));
                let p = c * &x[i - 1];
                out.add_term(rest, if pos % 2 == 1 { -p } else { p });
            }
        }
        Ok(out)
    }

    /// Evaluate a k-form on k vectors given as coefficient columns.
    pub fn eval_on(&self, vectors: &[Vec<ScalarPoly>]) -> Result<ScalarPoly> {
        if vectors.len() != self.grade {
            return Err(Error::DimensionMismatch {
                expected: self.grade,
                found: vectors.len(),
            });
        }
        let cols: Vec<usize> = (0..vectors.len()).collect();
        let m: PolyMatrix = (0..self.dim)
            .map(|r| vectors.iter().map(|v| v[r].clone()).collect())
            .collect();
        let mut acc = ScalarPoly::zero();
        for (b, c) in &self.coeffs {
            let rows: Vec<usize> = b.indices().iter().map(|i| i - 1).collect();
            acc += &(c * &poly_minor(&m, &rows, &cols));
        }
        Ok(acc)
    }
}

impl std::ops::Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.try_add(rhs).expect("compatible forms")
    }
}

impl std::ops::Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self.try_add(&-rhs).expect("compatible forms")
    }
}

impl std::ops::Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let name: String = if b.grade() == 0 {
                String::new()
            } else {
                format!(
                    "e{}",
                    b.indices().iter().map(|i| i.to_string()).collect::<String>()
                )
            };
            let single = c.num_terms() == 1;
            match (name.is_empty(), c.as_constant()) {
                (true, _) => write!(f, "{c}")?,
                (false, Some(q)) if q.is_one() => write!(f, "{name}")?,
                (false, Some(q)) if (-q.clone()).is_one() => write!(f, "-{name}")?,
                (false, _) if single => write!(f, "{c}*{name}")?,
                (false, _) => write!(f, "({c})*{name}")?,
            }
        }
        Ok(())
    }
}

/// Action of an endomorphism J of the Lie algebra on k-forms:
/// (Jα)(X_1..X_k) = (-1)^k α(JX_1, ..., JX_k).
///
/// `j[r][c]` is the r-th component of J E_c.
pub fn j_action(j: &PolyMatrix, x: &Form) -> Result<Form> {
    if j.len() != x.dim {
        return Err(Error::DimensionMismatch {
            expected: x.dim,
            found: j.len(),
        });
    }
    let k = x.grade;
    let mut out = Form::zero(x.dim, k);
    if k > x.dim {
        return Ok(out);
    }
    let targets = Blade::all(x.dim, k);
    for (src, c) in &x.coeffs {
        let rows: Vec<usize> = src.indices().iter().map(|i| i - 1).collect();
        for t in &targets {
            let cols: Vec<usize> = t.indices().iter().map(|i| i - 1).collect();
            let m = poly_minor(j, &rows, &cols);
            if m.is_zero() {
                continue;
            }
            let p = c * &m;
            out.add_term(*t, if k % 2 == 1 { -p } else { p });
        }
    }
    Ok(out)
}

/// Symmetric inner product on the Lie algebra, entries g(E_i, E_j).
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    entries: PolyMatrix,
}

impl Metric {
    pub fn new(entries: PolyMatrix) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidHermitian(format!(
                        "metric not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Metric { entries })
    }

    pub fn identity(n: usize) -> Self {
        Metric {
            entries: crate::linalg::poly_identity(n),
        }
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let n = d.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            ScalarPoly::constant(d[i].clone())
                        } else {
                            ScalarPoly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Metric { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarPoly {
        &self.entries[i][j]
    }

    pub fn evaluate(&self, point: &Point) -> Metric {
        Metric {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|c| c.evaluate(point)).collect())
                .collect(),
        }
    }

    pub fn as_rational(&self) -> Option<QMatrix> {
        poly_to_q(&self.entries)
    }

    pub fn leading_minors(&self) -> Vec<ScalarPoly> {
        (1..=self.dim())
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                poly_minor(&self.entries, &idx, &idx)
            })
            .collect()
    }

    /// Sylvester's criterion at a point (or directly, if constant).
    pub fn is_positive_definite_at(&self, point: &Point) -> Result<bool> {
        for m in self.leading_minors() {
            let v = m.evaluate_constant(point)?;
            if !v.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn constant(&self) -> Result<QMatrix> {
        self.as_rational().ok_or_else(|| Error::Parametric {
            what: "metric has symbolic entries; evaluate it first".into(),
        })
    }

    pub fn inner(&self, x: &[ScalarPoly], y: &[ScalarPoly]) -> ScalarPoly {
        let mut acc = ScalarPoly::zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..y.len() {
                if !y[j].is_zero() && !self.entries[i][j].is_zero() {
                    acc += &(&(&x[i] * &self.entries[i][j]) * &y[j]);
                }
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    /// e1∧...∧en is positively oriented.
    #[default]
    Positive,
    Negative,
}

/// Star operator scaled by 1/sqrt(det g): raise indices with g⁻¹ and
/// contract with the Levi-Civita symbol. Rational for every rational metric.
fn star_core(ginv: &PolyMatrix, x: &Form) -> Form {
    let n = x.dim;
    let k = x.grade;
    let mut raised = Form::zero(n, k);
    let targets = Blade::all(n, k);
    for (src, c) in &x.coeffs {
        let rows: Vec<usize> = src.indices().iter().map(|i| i - 1).collect();
        for t in &targets {
            let cols: Vec<usize> = t.indices().iter().map(|i| i - 1).collect();
            let m = poly_minor(ginv, &rows, &cols);
            if !m.is_zero() {
                raised.add_term(*t, c * &m);
            }
        }
    }
    let mut out = Form::zero(n, n - k);
    for (b, c) in &raised.coeffs {
        let comp = b.complement(n);
        let s = b.wedge_sign(comp).expect("disjoint");
        out.add_term(comp, if s < 0 { -c.clone() } else { c.clone() });
    }
    out
}

fn positive_definite_constant(g: &QMatrix) -> bool {
    (1..=g.rows()).all(|k| {
        let idx: Vec<Vec<Rational>> = (0..k).map(|i| (0..k).map(|j| g[(i, j)].clone()).collect()).collect();
        QMatrix::from_rows(idx).det().is_positive()
    })
}

fn inverse_metric(m: &Metric) -> Result<(PolyMatrix, Rational)> {
    let g = m.constant()?;
    if !positive_definite_constant(&g) {
        return Err(Error::NotPositiveDefinite);
    }
    let det = g.det();
    let inv = g.inverse().ok_or(Error::NotPositiveDefinite)?;
    Ok((crate::linalg::q_to_poly(&inv), det))
}

/// Hodge star of a constant positive-definite metric. Needs det g to be a
/// rational square so the result stays rational.
pub fn hodge_star(m: &Metric, orientation: Orientation, x: &Form) -> Result<Form> {
    if m.dim() != x.dim {
        return Err(Error::DimensionMismatch {
            expected: x.dim,
            found: m.dim(),
        });
    }
    let (ginv, det) = inverse_metric(m)?;
    let vol = rational_sqrt(&det).ok_or_else(|| Error::IrrationalVolume {
        det: crate::poly::fmt_rational(&det),
    })?;
    let s = match orientation {
        Orientation::Positive => vol,
        Orientation::Negative => -vol,
    };
    Ok(star_core(&ginv, x).scale(&ScalarPoly::constant(s)))
}

/// d* = (-1)^{n(k+1)+1} *d* on k-forms; for even n this is -*d*.
///
/// Works for any constant rational metric: the two square-root factors of
/// the stars multiply to det g.
pub fn codifferential(alg: &LieAlgebra, m: &Metric, x: &Form) -> Result<Form> {
    let n = x.dim;
    if alg.dim() != n || m.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: alg.dim(),
        });
    }
    if x.grade == 0 {
        return Ok(Form::zero(n, 0));
    }
    let (ginv, det) = inverse_metric(m)?;
    let inner = star_core(&ginv, x);
    let dinner = alg.differential(&inner)?;
    let outer = star_core(&ginv, &dinner);
    let sign = if (n * (x.grade + 1) + 1) % 2 == 0 { 1 } else { -1 };
    let factor = if sign < 0 { -det } else { det };
    Ok(outer.scale(&ScalarPoly::constant(factor)))
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    idx: Vec<usize>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    grade: usize,
    terms: Vec<TermJson>,
}

impl Form {
    pub fn to_json(&self) -> serde_json::Value {
        let j = FormJson {
            grade: self.grade,
            terms: self
                .coeffs
                .iter()
                .map(|(b, c)| TermJson {
                    idx: b.indices(),
                    coef: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(dim: usize, v: &serde_json::Value) -> Result<Form> {
        let j: FormJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        let mut terms = Vec::new();
        for t in j.terms {
            terms.push((t.idx, t.coef.parse::<ScalarPoly>()?));
        }
        Form::from_terms(dim, j.grade, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::poly_identity;
    use crate::poly::int;

    fn e(i: usize) -> Form {
        Form::e(4, i)
    }

    fn standard_j() -> PolyMatrix {
        let mut j = vec![vec![ScalarPoly::zero(); 4]; 4];
        j[1][0] = ScalarPoly::int(1);
        j[0][1] = ScalarPoly::int(-1);
        j[3][2] = ScalarPoly::int(1);
        j[2][3] = ScalarPoly::int(-1);
        j
    }

    #[test]
    fn wedge_basics() {
        assert_eq!(e(1).wedge(&e(2)).unwrap(), Form::basis(4, &[1, 2]));
        assert_eq!(e(2).wedge(&e(1)).unwrap(), -&Form::basis(4, &[1, 2]));
        assert!(e(3).wedge(&e(3)).unwrap().is_zero());
        let top = Form::basis(4, &[1, 2]).wedge(&Form::basis(4, &[3, 4])).unwrap();
        assert_eq!(top.top_coefficient(), ScalarPoly::one());
        assert!(e(1).wedge(&Form::e(3, 1)).is_err());
    }

    #[test]
    fn blade_order_is_lexicographic() {
        let mut v = Blade::all(4, 2);
        v.sort();
        let as_idx: Vec<Vec<usize>> = v.iter().map(|b| b.indices()).collect();
        assert_eq!(as_idx[0], vec![1, 2]);
        assert_eq!(as_idx[2], vec![1, 4]);
        assert_eq!(as_idx[3], vec![2, 3]);
        assert_eq!(as_idx[5], vec![3, 4]);
    }

    #[test]
    fn j_on_frame() {
        let j = standard_j();
        assert_eq!(j_action(&j, &e(1)).unwrap(), e(2));
        assert_eq!(j_action(&j, &e(2)).unwrap(), -&e(1));
        let aja = Form::basis(4, &[1, 2]);
        assert_eq!(j_action(&j, &aja).unwrap(), aja);
        // J on 2-forms squares to +1, on odd forms to -1.
        let x = &Form::basis(4, &[1, 3]) + &Form::basis(4, &[2, 4]).scale(&ScalarPoly::var("t"));
        let jj = j_action(&j, &j_action(&j, &x).unwrap()).unwrap();
        assert_eq!(jj, x);
        let y = Form::basis(4, &[1, 2, 3]);
        let jj = j_action(&j, &j_action(&j, &y).unwrap()).unwrap();
        assert_eq!(jj, -&y);
    }

    #[test]
    fn star_orthonormal() {
        let g = Metric::identity(4);
        let s = |f: &Form| hodge_star(&g, Orientation::Positive, f).unwrap();
        assert_eq!(s(&Form::basis(4, &[1, 2])), Form::basis(4, &[3, 4]));
        assert_eq!(s(&Form::scalar(4, ScalarPoly::one())), Form::basis(4, &[1, 2, 3, 4]));
        assert_eq!(s(&s(&e(1))), -&e(1));
    }

    #[test]
    fn star_scaled_metric() {
        let g = Metric::diagonal(&[int(4), int(1), int(1), int(1)]);
        let s = |f: &Form| hodge_star(&g, Orientation::Positive, f).unwrap();
        assert_eq!(s(&s(&e(1))), -&e(1));
        assert_eq!(s(&Form::scalar(4, ScalarPoly::one())).top_coefficient(), ScalarPoly::int(2));
        let g3 = Metric::diagonal(&[int(2), int(1), int(1), int(1)]);
        assert!(matches!(
            hodge_star(&g3, Orientation::Positive, &e(1)),
            Err(Error::IrrationalVolume { .. })
        ));
        let bad = Metric::diagonal(&[int(-1), int(1), int(1), int(1)]);
        assert_eq!(
            hodge_star(&bad, Orientation::Positive, &e(1)),
            Err(Error::NotPositiveDefinite)
        );
    }

    #[test]
    fn contraction_and_evaluation() {
        let f = Form::basis(4, &[1, 2]);
        let mut x = vec![ScalarPoly::zero(); 4];
        x[1] = ScalarPoly::one();
        assert_eq!(f.contract(&x).unwrap(), -&e(1));
        let id = poly_identity(4);
        let v = f.eval_on(&[id[0].clone(), id[1].clone()]).unwrap();
        assert_eq!(v, ScalarPoly::one());
    }

    #[test]
    fn json_round_trip() {
        let f = &Form::basis(4, &[2, 1]) + &Form::basis(4, &[3, 4]).scale(&"1/2*t".parse().unwrap());
        let v = f.to_json();
        assert_eq!(v["grade"], 2);
        assert_eq!(v["terms"][0]["idx"], serde_json::json!([1, 2]));
        assert_eq!(v["terms"][0]["coef"], "-1");
        assert_eq!(Form::from_json(4, &v).unwrap(), f);
    }
}
