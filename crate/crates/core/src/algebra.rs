//! Lie algebras given by the differential on the dual basis, and their
//! structural invariants.
//!
//! Conventions: `d e_k = Σ_{i<j} c^k_ij e_i∧e_j` and `da(X,Y) = -a([X,Y])`,
//! so `[E_i, E_j] = -Σ_k c^k_ij E_k`. Exact invariants (series, centre,
//! filtrations) are computed at a rational evaluation point.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{Blade, Form};
use crate::linalg::{span_basis, QMatrix};
use crate::poly::{Point, Rational, ScalarPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    d: Vec<Form>,
    name: Option<String>,
}

impl LieAlgebra {
    pub fn new(d: Vec<Form>) -> Result<Self> {
        let n = d.len();
        for f in &d {
            if f.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.dim(),
                });
            }
            if f.grade() != 2 && !f.is_zero() {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: f.grade(),
                });
            }
        }
        let d = d
            .into_iter()
            .map(|f| if f.is_zero() { Form::zero(n, 2) } else { f })
            .collect();
        Ok(LieAlgebra { dim: n, d, name: None })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            dim: n,
            d: vec![Form::zero(n, 2); n],
            name: None,
        }
    }

    /// Algebra from a bracket on basis vectors: `bracket(i, j)` returns the
    /// components of [E_i, E_j] (0-based i < j).
    pub fn from_brackets(n: usize, bracket: impl Fn(usize, usize) -> Vec<ScalarPoly>) -> Self {
        let mut d = vec![Form::zero(n, 2); n];
        for i in 0..n {
            for j in i + 1..n {
                let v = bracket(i, j);
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        let t = Form::basis(n, &[i + 1, j + 1]).scale(&-c);
                        d[k] = &d[k] + &t;
                    }
                }
            }
        }
        LieAlgebra { dim: n, d, name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// d e_k for k = 1..n (index 0-based in the slice).
    pub fn d_basis(&self) -> &[Form] {
        &self.d
    }

    /// Structure constant c^k_ij: coefficient of e_i∧e_j in d e_k (1-based).
    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> ScalarPoly {
        self.d[k - 1].coefficient(&[i, j])
    }

    pub fn variables(&self) -> BTreeSet<Arc<str>> {
        self.d
            .iter()
            .flat_map(|f| f.terms().flat_map(|(_, c)| c.variables()).collect::<Vec<_>>())
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.variables().is_empty()
    }

    pub fn evaluate(&self, point: &Point) -> LieAlgebra {
        LieAlgebra {
            dim: self.dim,
            d: self.d.iter().map(|f| f.evaluate(point)).collect(),
            name: self.name.clone(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> LieAlgebra {
        LieAlgebra {
            dim: self.dim,
            d: self.d.iter().map(|x| x.map_coeffs(&f)).collect(),
            name: self.name.clone(),
        }
    }

    /// R × g: a new basis element with vanishing differential appended last.
    pub fn times_r(&self) -> LieAlgebra {
        let n = self.dim + 1;
        let mut d: Vec<Form> = self
            .d
            .iter()
            .map(|f| {
                let terms: Vec<(Vec<usize>, ScalarPoly)> =
                    f.terms().map(|(b, c)| (b.indices(), c.clone())).collect();
                Form::from_terms(n, 2, terms).expect("indices fit")
            })
            .collect();
        d.push(Form::zero(n, 2));
        LieAlgebra {
            dim: n,
            d,
            name: self.name.as_ref().map(|s| format!("R x {s}")),
        }
    }

    /// Exterior derivative extended as an anti-derivation.
    pub fn differential(&self, x: &Form) -> Result<Form> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        let n = self.dim;
        let mut out = Form::zero(n, x.grade() + 1);
        for (b, c) in x.terms() {
            let idx = b.indices();
            for (pos, &i) in idx.iter().enumerate() {
                let de = &self.d[i - 1];
                if de.is_zero() {
                    continue;
                }
                let left = Form::basis(n, &idx[..pos]);
                let right = Form::basis(n, &idx[pos + 1..]);
                let mut t = left.wedge(de)?.wedge(&right)?;
                if pos % 2 == 1 {
                    t = -&t;
                }
                out = &out + &t.scale(c);
            }
        }
        Ok(out)
    }

    /// Components of [X, Y]: e_k([X,Y]) = -de_k(X,Y).
    pub fn bracket(&self, x: &[ScalarPoly], y: &[ScalarPoly]) -> Result<Vec<ScalarPoly>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len().min(y.len()),
            });
        }
        self.d
            .iter()
            .map(|f| Ok(-f.eval_on(&[x.to_vec(), y.to_vec()])?))
            .collect()
    }

    /// d(d e_k) for every k.
    pub fn jacobi_forms(&self) -> Vec<Form> {
        self.d
            .iter()
            .map(|f| self.differential(f).expect("same dimension"))
            .collect()
    }

    /// All coefficients of d²e_k; the algebra satisfies Jacobi iff empty.
    pub fn jacobi_check(&self) -> Vec<ScalarPoly> {
        self.jacobi_forms()
            .iter()
            .flat_map(|f| f.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>())
            .collect()
    }

    fn require_constant(&self) -> Result<()> {
        if self.is_constant() {
            Ok(())
        } else {
            Err(Error::Parametric {
                what: format!(
                    "algebra depends on {:?}",
                    self.variables().iter().map(|v| v.to_string()).collect::<Vec<_>>()
                ),
            })
        }
    }

    /// ad matrices at a point: `ad[i][(k, j)] = e_k([E_i, E_j])` (0-based).
    pub fn ad_matrices(&self, point: &Point) -> Result<Vec<QMatrix>> {
        let a = self.evaluate(point);
        a.require_constant()?;
        let n = self.dim;
        let mut ad = vec![QMatrix::zeros(n, n); n];
        for k in 0..n {
            for (b, c) in a.d[k].terms() {
                let idx = b.indices();
                let (i, j) = (idx[0] - 1, idx[1] - 1);
                let v = c.as_constant().expect("constant");
                // e_k([E_i,E_j]) = -c, e_k([E_j,E_i]) = c.
                ad[i][(k, j)] = -v.clone();
                ad[j][(k, i)] = v;
            }
        }
        Ok(ad)
    }
}

/// Concrete view of an algebra at a rational point: bracket on rational
/// vectors via the ad matrices.
#[derive(Clone, Debug)]
pub struct Concrete {
    dim: usize,
    ad: Vec<QMatrix>,
}

impl Concrete {
    pub fn new(alg: &LieAlgebra, point: &Point) -> Result<Self> {
        Ok(Concrete {
            dim: alg.dim(),
            ad: alg.ad_matrices(point)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ad(&self, i: usize) -> &QMatrix {
        &self.ad[i]
    }

    /// ad(X) as a matrix.
    pub fn ad_of(&self, x: &[Rational]) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let v = &self.ad[i][(r, c)];
                    if !v.is_zero() {
                        m[(r, c)] += xi * v;
                    }
                }
            }
        }
        m
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.ad_of(x).apply(y)
    }

    fn brackets_of(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in &a.basis {
            for y in &b.basis {
                let v = self.bracket(x, y);
                if v.iter().any(|c| !c.is_zero()) {
                    vs.push(v);
                }
            }
        }
        Subspace::span(self.dim, &vs)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let g = self.full();
        self.brackets_of(&g, &g)
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![self.full()];
        loop {
            let last = out.last().expect("non-empty");
            let next = self.brackets_of(last, last);
            if next.dim() == last.dim() {
                return out;
            }
            let done = next.dim() == 0;
            out.push(next);
            if done {
                return out;
            }
        }
    }

    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let g = self.full();
        let mut out = vec![g.clone()];
        loop {
            let last = out.last().expect("non-empty");
            let next = self.brackets_of(&g, last);
            if next.dim() == last.dim() {
                return out;
            }
            let done = next.dim() == 0;
            out.push(next);
            if done {
                return out;
            }
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(|s| s.dim() == 0)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(|s| s.dim() == 0)
    }

    /// {X : [X, E_j] = 0 for all j}.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // Rows: for each (j, k), Σ_i X_i e_k([E_i,E_j]) = 0.
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.ad[i][(k, j)].clone()).collect());
            }
        }
        Subspace::from_nullspace(n, QMatrix::from_rows(rows))
    }

    /// χ(E_i) = tr ad(E_i).
    pub fn chi(&self) -> Vec<Rational> {
        self.ad.iter().map(QMatrix::trace).collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.chi().iter().all(Zero::is_zero)
    }

    pub fn unimodular_kernel(&self) -> Subspace {
        Subspace::from_nullspace(self.dim, QMatrix::from_rows(vec![self.chi()]))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let g = self.full();
        let br = self.brackets_of(&g, s);
        br.is_subspace_of(s)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.brackets_of(s, s).is_subspace_of(s)
    }

    /// The subalgebra `s` with its own basis (the RREF basis of `s`).
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra> {
        if !self.is_subalgebra(s) {
            return Err(Error::NotAnIdeal);
        }
        let m = s.dim();
        let cols = QMatrix::from_columns(self.dim, &s.basis);
        let brackets: Vec<Vec<Vec<ScalarPoly>>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        let v = self.bracket(&s.basis[a], &s.basis[b]);
                        let coords = cols.solve(&v).expect("closed under bracket");
                        coords.into_iter().map(ScalarPoly::constant).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(LieAlgebra::from_brackets(m, |i, j| brackets[i][j].clone()))
    }

    /// g / I, with basis the images of the standard basis vectors at the
    /// non-pivot positions of I.
    pub fn quotient(&self, ideal: &Subspace) -> Result<LieAlgebra> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let pivots = ideal.pivots();
        let keep: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let m = keep.len();
        let reduce = |mut v: Vec<Rational>| -> Vec<ScalarPoly> {
            for (r, &p) in pivots.iter().enumerate() {
                if v[p].is_zero() {
                    continue;
                }
                let f = v[p].clone();
                for (c, x) in ideal.basis[r].iter().enumerate() {
                    if !x.is_zero() {
                        v[c] -= &f * x;
                    }
                }
            }
            keep.iter().map(|&c| ScalarPoly::constant(v[c].clone())).collect()
        };
        let unit = |i: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); self.dim];
            v[i] = Rational::one();
            v
        };
        let table: Vec<Vec<Vec<ScalarPoly>>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| reduce(self.bracket(&unit(keep[a]), &unit(keep[b]))))
                    .collect()
            })
            .collect();
        Ok(LieAlgebra::from_brackets(m, |i, j| table[i][j].clone()))
    }
}

/// Linear subspace of Q^n, kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        Subspace {
            ambient,
            basis: span_basis(ambient, vectors),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: QMatrix::identity(ambient).rows_vec(),
        }
    }

    pub fn from_nullspace(ambient: usize, m: QMatrix) -> Self {
        Self::span(ambient, &m.nullspace())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|c| !c.is_zero()).expect("non-zero row"))
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        span_basis(self.ambient, &all).len() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve Σ a_i u_i = Σ b_j w_j.
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x.clone()).collect()));
        let m = QMatrix::from_columns(self.ambient, &cols);
        let vs: Vec<Vec<Rational>> = m
            .nullspace()
            .into_iter()
            .map(|coef| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (a, u) in coef.iter().zip(&self.basis) {
                    for (c, x) in u.iter().enumerate() {
                        v[c] += a * x;
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vs)
    }
}


/// The chains W_i and refined V_i of the dual space, as subspaces of
/// coefficient vectors over e_1..e_n.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub w: Vec<Subspace>,
    pub v: Vec<Subspace>,
}

fn two_form_vector(n: usize, f: &Form) -> Vec<Rational> {
    Blade::all(n, 2)
        .iter()
        .map(|b| f.blade_coefficient(*b).as_constant().expect("constant"))
        .collect()
}

/// {α ∈ g* : dα ∈ W ∧ g*}.
fn admissible(alg: &LieAlgebra, w: &Subspace) -> Subspace {
    let n = alg.dim();
    let dcols: Vec<Vec<Rational>> = (0..n).map(|k| two_form_vector(n, &alg.d[k])).collect();
    let mut gens = Vec::new();
    for u in w.basis() {
        let uf = Form::one_form(&u.iter().cloned().map(ScalarPoly::constant).collect::<Vec<_>>());
        for j in 1..=n {
            let p = uf.wedge(&Form::e(n, j)).expect("same dim");
            gens.push(two_form_vector(n, &p));
        }
    }
    let gens = span_basis(n * (n - 1) / 2, &gens);
    let mut cols = dcols;
    cols.extend(gens.iter().map(|g| g.iter().map(|x| -x.clone()).collect()));
    let m = QMatrix::from_columns(n * (n - 1) / 2, &cols);
    let vs: Vec<Vec<Rational>> = m.nullspace().into_iter().map(|v| v[..n].to_vec()).collect();
    Subspace::span(n, &vs)
}

/// W_1 = ker d, W_i maximal with dW_i ⊆ I(W_{i-1}); plus a refinement
/// with dim V_i = i. Errors when the chain stops short of g*.
pub fn solvable_filtration(alg: &LieAlgebra, point: &Point) -> Result<Filtration> {
    let a = alg.evaluate(point);
    a.require_constant()?;
    let n = a.dim();
    let mut w = vec![admissible(&a, &Subspace::zero(n))];
    loop {
        let next = admissible(&a, w.last().expect("non-empty"));
        if next.dim() == w.last().expect("non-empty").dim() {
            break;
        }
        w.push(next);
    }
    if w.last().expect("non-empty").dim() != n {
        return Err(Error::NotSolvable);
    }
    let mut v = vec![Subspace::zero(n)];
    while v.len() <= n {
        let cur = v.last().expect("non-empty").clone();
        // Take the next vector from the first W_j not yet contained, which
        // keeps the refinement compatible with the W chain.
        let wj = w.iter().find(|s| !s.is_subspace_of(&cur)).expect("cur ≠ g*");
        let cand = admissible(&a, &cur).intersection(wj);
        let pick = cand
            .basis()
            .iter()
            .find(|x| !cur.contains(x))
            .ok_or(Error::NotSolvable)?
            .clone();
        let mut basis = cur.basis().to_vec();
        basis.push(pick);
        v.push(Subspace::span(n, &basis));
    }
    Ok(Filtration { w, v: v.into_iter().skip(1).collect() })
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: String,
    i: usize,
    j: usize,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    d: Vec<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl LieAlgebra {
    pub fn to_json(&self) -> serde_json::Value {
        let j = AlgebraJson {
            dim: self.dim,
            d: self
                .d
                .iter()
                .map(|f| {
                    f.terms()
                        .map(|(b, c)| {
                            let idx = b.indices();
                            TermJson {
                                coef: c.to_string(),
                                i: idx[0],
                                j: idx[1],
                            }
                        })
                        .collect()
                })
                .collect(),
            name: self.name.clone(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LieAlgebra> {
        let j: AlgebraJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        if j.d.len() != j.dim {
            return Err(Error::DimensionMismatch {
                expected: j.dim,
                found: j.d.len(),
            });
        }
        let mut d = Vec::new();
        for entry in j.d {
            let mut terms = Vec::new();
            for t in entry {
                terms.push((vec![t.i, t.j], t.coef.parse::<ScalarPoly>()?));
            }
            d.push(Form::from_terms(j.dim, 2, terms)?);
        }
        let mut alg = LieAlgebra::new(d)?;
        alg.name = j.name;
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn h3() -> LieAlgebra {
        LieAlgebra::new(vec![
            Form::zero(3, 2),
            Form::zero(3, 2),
            Form::basis(3, &[2, 1]),
        ])
        .unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn p(v: &[i64]) -> Vec<ScalarPoly> {
        v.iter().map(|&x| ScalarPoly::int(x)).collect()
    }

    #[test]
    fn heisenberg_bracket() {
        let g = h3();
        assert_eq!(g.bracket(&p(&[1, 0, 0]), &p(&[0, 1, 0])).unwrap(), p(&[0, 0, 1]));
        let c = Concrete::new(&g, &Point::new()).unwrap();
        assert_eq!(c.bracket(&q(&[1, 0, 0]), &q(&[0, 1, 0])), q(&[0, 0, 1]));
        assert_eq!(c.bracket(&q(&[0, 1, 0]), &q(&[1, 0, 0])), q(&[0, 0, -1]));
    }

    #[test]
    fn from_brackets_inverts_bracket() {
        let g = h3();
        let again = LieAlgebra::from_brackets(3, |i, j| {
            let mut x = vec![ScalarPoly::zero(); 3];
            let mut y = vec![ScalarPoly::zero(); 3];
            x[i] = ScalarPoly::one();
            y[j] = ScalarPoly::one();
            g.bracket(&x, &y).unwrap()
        });
        assert_eq!(again.d_basis(), g.d_basis());
    }

    #[test]
    fn heisenberg_structure() {
        let c = Concrete::new(&h3(), &Point::new()).unwrap();
        let ds = c.derived_series();
        assert_eq!(ds.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3, 1, 0]);
        assert!(c.is_nilpotent());
        assert_eq!(c.center(), Subspace::span(3, &[q(&[0, 0, 1])]));
        assert!(c.is_unimodular());
        let f = solvable_filtration(&h3(), &Point::new()).unwrap();
        assert_eq!(f.w.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(f.v.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn differential_on_products() {
        let g = h3();
        let x = Form::basis(3, &[1, 3]);
        assert!(g.differential(&x).unwrap().is_zero());
        assert!(g.jacobi_check().is_empty());
    }

    #[test]
    fn quotient_by_center() {
        let c = Concrete::new(&h3(), &Point::new()).unwrap();
        let z = c.center();
        let quo = c.quotient(&z).unwrap();
        assert_eq!(quo.dim(), 2);
        assert!(quo.d_basis().iter().all(Form::is_zero));
        assert!(c.quotient(&Subspace::span(3, &[q(&[1, 0, 0])])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = h3().with_name("h3");
        let v = g.to_json();
        assert_eq!(v["d"][2][0]["coef"], "-1");
        assert_eq!(LieAlgebra::from_json(&v).unwrap(), g);
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::span(3, &[q(&[1, 0, 0]), q(&[0, 1, 0])]);
        let b = Subspace::span(3, &[q(&[0, 1, 1]), q(&[0, 1, 0])]);
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.intersection(&b).contains(&q(&[0, 2, 0])));
    }
}
