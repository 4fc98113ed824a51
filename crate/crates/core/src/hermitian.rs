//! Hermitian structures (J, g) on Lie algebras: fundamental form,
//! integrability, Bismut torsion, SKT and Kähler tests, Lee form, the
//! generic condition systems in dimension four, and the torsion of a
//! bi-invariant metric.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::form::{codifferential, j_action, Blade, Form, Metric};
use crate::linalg::{poly_identity, poly_mul, poly_transpose, q_to_poly, PolyMatrix, QMatrix};
use crate::membership::{Membership, MembershipBasis};
use crate::poly::{Point, ScalarPoly};

fn p(s: &str) -> ScalarPoly {
    s.parse().expect("valid polynomial literal")
}

/// The block complex structure J E_{2i-1} = E_{2i}.
pub fn standard_j(n: usize) -> PolyMatrix {
    let mut j = vec![vec![ScalarPoly::zero(); n]; n];
    for b in (0..n).step_by(2) {
        j[b + 1][b] = ScalarPoly::one();
        j[b][b + 1] = ScalarPoly::int(-1);
    }
    j
}

#[derive(Clone, Debug)]
pub struct HermitianStructure {
    alg: LieAlgebra,
    j: PolyMatrix,
    g: Metric,
}

impl HermitianStructure {
    /// Checks J² = -1 and g(J·, J·) = g identically.
    pub fn new(alg: LieAlgebra, j: PolyMatrix, g: Metric) -> Result<Self> {
        let n = alg.dim();
        if n % 2 != 0 {
            return Err(Error::InvalidHermitian(format!("odd dimension {n}")));
        }
        if j.len() != n || j.iter().any(|r| r.len() != n) || g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: j.len(),
            });
        }
        let j2 = poly_mul(&j, &j);
        for (r, row) in j2.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                let want = if r == c { ScalarPoly::int(-1) } else { ScalarPoly::zero() };
                if *x != want {
                    return Err(Error::InvalidHermitian("J^2 != -1".into()));
                }
            }
        }
        let jt = poly_transpose(&j);
        let pulled = poly_mul(&poly_mul(&jt, g.entries()), &j);
        if pulled != *g.entries() {
            return Err(Error::InvalidHermitian("metric is not J-invariant".into()));
        }
        Ok(HermitianStructure { alg, j, g })
    }

    /// Standard J with the identity metric.
    pub fn standard(alg: LieAlgebra) -> Result<Self> {
        let n = alg.dim();
        Self::new(alg, standard_j(n), Metric::identity(n))
    }

    pub fn alg(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn j(&self) -> &PolyMatrix {
        &self.j
    }

    pub fn metric(&self) -> &Metric {
        &self.g
    }

    pub fn evaluate(&self, point: &Point) -> HermitianStructure {
        HermitianStructure {
            alg: self.alg.evaluate(point),
            j: self
                .j
                .iter()
                .map(|r| r.iter().map(|c| c.evaluate(point)).collect())
                .collect(),
            g: self.g.evaluate(point),
        }
    }

    pub fn to_json(&self) -> Value {
        let m = |a: &PolyMatrix| -> Vec<Vec<String>> {
            a.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
        };
        json!({"J": m(&self.j), "g": m(self.g.entries())})
    }

    pub fn from_json(alg: LieAlgebra, v: &Value) -> Result<Self> {
        let read = |key: &str| -> Result<PolyMatrix> {
            let rows = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json(format!("missing \"{key}\"")))?;
            rows.iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::Json(format!("\"{key}\" rows must be arrays")))?
                        .iter()
                        .map(|c| match c {
                            Value::String(s) => s.parse(),
                            Value::Number(n) => n.to_string().parse(),
                            _ => Err(Error::Json(format!("bad entry in \"{key}\""))),
                        })
                        .collect()
                })
                .collect()
        };
        let j = read("J")?;
        let g = Metric::new(read("g")?)?;
        Self::new(alg, j, g)
    }
}

/// ω(X, Y) = g(JX, Y).
pub fn fundamental_form(h: &HermitianStructure) -> Form {
    let n = h.alg.dim();
    let mut terms = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut c = ScalarPoly::zero();
            for r in 0..n {
                if !h.j[r][a].is_zero() {
                    c += &(&h.j[r][a] * h.g.entry(r, b));
                }
            }
            if !c.is_zero() {
                terms.push((vec![a + 1, b + 1], c));
            }
        }
    }
    Form::from_terms(n, 2, terms).expect("indices in range")
}

fn two_form_matrix(f: &Form) -> PolyMatrix {
    let n = f.dim();
    let mut m = vec![vec![ScalarPoly::zero(); n]; n];
    for (b, c) in f.terms() {
        let idx = b.indices();
        let (i, j) = (idx[0] - 1, idx[1] - 1);
        m[i][j] = c.clone();
        m[j][i] = -c.clone();
    }
    m
}

fn mat_sub(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn mat_add(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

/// Real and imaginary parts of the (0,2)-components of d(e_k ∘ P), where
/// P = 1 - iJ projects onto the +i eigenspace, for every k. The list is
/// empty iff J is integrable.
pub fn integrability_residual(alg: &LieAlgebra, j: &PolyMatrix) -> Result<Vec<ScalarPoly>> {
    let n = alg.dim();
    if j.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: j.len(),
        });
    }
    let jt = poly_transpose(j);
    let mut out: Vec<ScalarPoly> = Vec::new();
    let mut push = |x: &ScalarPoly| {
        if x.is_zero() {
            return;
        }
        let m = x.monic();
        if !out.iter().any(|y| y.monic() == m) {
            out.push(x.clone());
        }
    };
    for k in 0..n {
        // e_k ∘ J as a 1-form.
        let ej = Form::one_form(&j[k]);
        let bre = two_form_matrix(&alg.differential(&Form::e(n, k + 1))?);
        let bim = two_form_matrix(&alg.differential(&ej)?.scale(&ScalarPoly::int(-1)));
        // M = B (1 + iJ), Z = (1 + iJᵀ) M.
        let mre = mat_sub(&bre, &poly_mul(&bim, j));
        let mim = mat_add(&bim, &poly_mul(&bre, j));
        let zre = mat_sub(&mre, &poly_mul(&jt, &mim));
        let zim = mat_add(&mim, &poly_mul(&jt, &mre));
        for a in 0..n {
            for b in a + 1..n {
                push(&zre[a][b]);
                push(&zim[a][b]);
            }
        }
    }
    Ok(out)
}

pub fn is_integrable(alg: &LieAlgebra, j: &PolyMatrix) -> Result<bool> {
    Ok(integrability_residual(alg, j)?.is_empty())
}

/// c = -J(dω).
pub fn bismut_torsion(h: &HermitianStructure) -> Result<Form> {
    let domega = h.alg.differential(&fundamental_form(h))?;
    Ok(-&j_action(&h.j, &domega)?)
}

/// Outcome of an exact test; `residual` lists the nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub holds: bool,
    pub residual: Vec<ScalarPoly>,
}

impl Decision {
    fn of(f: &Form) -> Decision {
        let residual: Vec<ScalarPoly> = f.terms().map(|(_, c)| c.clone()).collect();
        Decision {
            holds: residual.is_empty(),
            residual,
        }
    }
}

/// dc = 0.
pub fn is_skt(h: &HermitianStructure) -> Result<Decision> {
    let c = bismut_torsion(h)?;
    Ok(Decision::of(&h.alg.differential(&c)?))
}

/// dω = 0.
pub fn is_kahler(h: &HermitianStructure) -> Result<Decision> {
    Ok(Decision::of(&h.alg.differential(&fundamental_form(h))?))
}

/// θ = J(d*ω), with the metric evaluated at `point`.
pub fn lee_form(h: &HermitianStructure, point: &Point) -> Result<Form> {
    let alg = h.alg.evaluate(point);
    let g = h.g.evaluate(point);
    let j: PolyMatrix = h
        .j
        .iter()
        .map(|r| r.iter().map(|c| c.evaluate(point)).collect())
        .collect();
    let omega = fundamental_form(&HermitianStructure {
        alg: alg.clone(),
        j: j.clone(),
        g: g.clone(),
    });
    let dstar = codifferential(&alg, &g, &omega)?;
    j_action(&j, &dstar)
}

/// d*θ = 0. With parameters left in the algebra the answer is the
/// identical vanishing of the resulting polynomial.
pub fn lee_coclosed(h: &HermitianStructure, point: &Point) -> Result<bool> {
    let theta = lee_form(h, point)?;
    let alg = h.alg.evaluate(point);
    let g = h.g.evaluate(point);
    Ok(codifferential(&alg, &g, &theta)?.is_zero())
}

/// 2-form from frame words such as "aJa" or "JaJb" with the frame
/// e1 = a, e2 = Ja, e3 = b, e4 = Jb.
pub fn frame_form(terms: &[(&str, ScalarPoly)]) -> Result<Form> {
    let mut out = Form::zero(4, 2);
    for (word, c) in terms {
        let idx = frame_word(word)?;
        out = &out + &Form::from_terms(4, idx.len(), [(idx, c.clone())])?;
    }
    Ok(out)
}

fn frame_word(w: &str) -> Result<Vec<usize>> {
    let mut idx = Vec::new();
    let mut chars = w.chars().peekable();
    while let Some(ch) = chars.next() {
        let (j, letter) = if ch == 'J' {
            (true, chars.next())
        } else {
            (false, Some(ch))
        };
        let base = match letter {
            Some('a') => 1,
            Some('b') => 3,
            _ => {
                return Err(Error::Syntax {
                    position: 0,
                    message: format!("bad frame word {w:?}"),
                })
            }
        };
        idx.push(if j { base + 1 } else { base });
    }
    Ok(idx)
}

/// Algebra from d(a), d(Ja), d(b), d(Jb) in frame words.
pub fn frame_algebra(d: [&[(&str, ScalarPoly)]; 4]) -> Result<LieAlgebra> {
    LieAlgebra::new(d.iter().map(|t| frame_form(t)).collect::<Result<_>>()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    Complex,
    Real,
}

impl Case {
    pub fn as_str(&self) -> &'static str {
        match self {
            Case::Complex => "complex",
            Case::Real => "real",
        }
    }

    pub fn parse(s: &str) -> Result<Case> {
        match s {
            "complex" => Ok(Case::Complex),
            "real" => Ok(Case::Real),
            _ => Err(Error::Unknown(s.into())),
        }
    }
}

/// The normal-form structure equations of a case with all constants free,
/// and the residual systems computed from them.
#[derive(Clone, Debug)]
pub struct GenericConditions {
    pub case: Case,
    pub h: HermitianStructure,
    pub integrability: Vec<ScalarPoly>,
    pub jacobi: Vec<ScalarPoly>,
    pub skt: ScalarPoly,
    /// Coefficients of dω.
    pub kahler: Vec<ScalarPoly>,
}

impl GenericConditions {
    pub fn variables(&self) -> Vec<Arc<str>> {
        let mut v: Vec<Arc<str>> = self.h.alg.variables().into_iter().collect();
        if self.case == Case::Real {
            v.push(Arc::from("t"));
            v.sort();
            v.dedup();
        }
        v
    }

    /// integrability ∪ jacobi ∪ {skt}.
    pub fn all(&self) -> Vec<ScalarPoly> {
        let mut v = self.integrability.clone();
        v.extend(self.jacobi.iter().cloned());
        v.push(self.skt.clone());
        v
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &[ScalarPoly]| -> Vec<String> { v.iter().map(|x| x.to_string()).collect() };
        json!({
            "case": self.case.as_str(),
            "integrability": s(&self.integrability),
            "jacobi": s(&self.jacobi),
            "skt": self.skt.to_string(),
            "kahler": s(&self.kahler),
        })
    }
}

/// Structure equations for a case, with free constants.
pub fn generic_structure(case: Case) -> HermitianStructure {
    let alg = match case {
        Case::Complex => frame_algebra([
            &[],
            &[("aJa", p("x1"))],
            &[
                ("aJa", p("y1")),
                ("ab", p("y2")),
                ("aJb", p("y3")),
                ("bJa", p("z1")),
                ("JaJb", p("z2")),
            ],
            &[
                ("aJa", p("u1")),
                ("ab", p("u2")),
                ("aJb", p("u3")),
                ("bJa", p("v1")),
                ("JaJb", p("v2")),
                ("bJb", p("w1")),
            ],
        ]),
        Case::Real => frame_algebra([
            &[],
            &[
                ("aJa", p("x1")),
                ("ab", p("x2")),
                ("JaJb", p("x2")),
                ("aJb", p("x3")),
                ("bJa", p("x3")),
                ("bJb", p("y2")),
            ],
            &[("aJa", p("z1")), ("ab", p("z2")), ("aJb", p("z3"))],
            &[
                ("aJa", p("u1")),
                ("ab", p("u2")),
                ("aJb", p("u3")),
                ("bJa", p("v1")),
                ("bJb", p("v2")),
                ("JaJb", p("w1")),
            ],
        ]),
    }
    .expect("well-formed equations");
    let g = match case {
        Case::Complex => Metric::identity(4),
        Case::Real => real_case_metric(p("t")),
    };
    HermitianStructure::new(alg, standard_j(4), g).expect("compatible")
}

/// g with g(b, Ja) = t = -g(a, Jb), so ω = aJa + bJb + t(ab + JaJb).
pub fn real_case_metric(t: ScalarPoly) -> Metric {
    let mut m = poly_identity(4);
    m[1][2] = t.clone();
    m[2][1] = t.clone();
    m[0][3] = -t.clone();
    m[3][0] = -t;
    Metric::new(m).expect("symmetric")
}

/// aff_R × aff_R with d(Ja) = aJa, d(Jb) = bJb and
/// ω = aJa + bJb + t(aJb + bJa); SKT only at t = 0.
pub fn deformed_product_structure(t: ScalarPoly) -> HermitianStructure {
    let alg = frame_algebra([&[], &[("aJa", ScalarPoly::one())], &[], &[("bJb", ScalarPoly::one())]])
        .expect("frame words")
        .with_name("aff_R_x_aff_R");
    let mut m = poly_identity(4);
    m[0][2] = t.clone();
    m[2][0] = t.clone();
    m[1][3] = t.clone();
    m[3][1] = t;
    HermitianStructure::new(alg, standard_j(4), Metric::new(m).expect("symmetric")).expect("compatible")
}

fn compute_generic(case: Case) -> GenericConditions {
    let h = generic_structure(case);
    let integrability = integrability_residual(&h.alg, &h.j).expect("dimension 4");
    let jacobi = h.alg.jacobi_check();
    let skt = is_skt(&h)
        .expect("dimension 4")
        .residual
        .into_iter()
        .next()
        .unwrap_or_else(ScalarPoly::zero);
    let kahler = is_kahler(&h).expect("dimension 4").residual;
    GenericConditions {
        case,
        h,
        integrability,
        jacobi,
        skt,
        kahler,
    }
}

/// Memoized generic systems.
pub fn generic_condition_polys(case: Case) -> &'static GenericConditions {
    static COMPLEX: OnceLock<GenericConditions> = OnceLock::new();
    static REAL: OnceLock<GenericConditions> = OnceLock::new();
    match case {
        Case::Complex => COMPLEX.get_or_init(|| compute_generic(Case::Complex)),
        Case::Real => REAL.get_or_init(|| compute_generic(Case::Real)),
    }
}

/// Read the constants of an algebra written in a case's normal form: the
/// substitution sending the generic algebra to `alg`, or `None` if `alg`
/// has terms the normal form does not allow.
pub fn generic_assignment(case: Case, alg: &LieAlgebra) -> Option<BTreeMap<String, ScalarPoly>> {
    let generic = generic_structure(case);
    if alg.dim() != 4 {
        return None;
    }
    let mut out: BTreeMap<String, ScalarPoly> = BTreeMap::new();
    for (gk, fk) in generic.alg.d_basis().iter().zip(alg.d_basis()) {
        for (b, c) in fk.terms() {
            if gk.blade_coefficient(b).is_zero() {
                if !c.is_zero() {
                    return None;
                }
            }
        }
        for (b, gc) in gk.terms() {
            // Each generic slot is ±(single variable).
            let (m, sign) = gc.terms().next().expect("nonzero");
            let var = m.powers()[0].0.to_string();
            let val = fk.blade_coefficient(b).scale(&sign.recip());
            match out.get(&var) {
                Some(prev) if *prev != val => return None,
                _ => {
                    out.insert(var, val);
                }
            }
        }
    }
    Some(out)
}

/// The published SKT condition quantities for a case.
pub fn listed_conditions(case: Case) -> Vec<ScalarPoly> {
    let src: &[&str] = match case {
        Case::Complex => &[
            "y2 - z2 - u3 + v1",
            "y3 - z1 + u2 - v2",
            "x1*z1 - y3*v1 - z2*u2",
            "(x1 - y2 + u3)*z2 - y3*(z1 + v2)",
            "y2*w1",
            "y3*w1",
            "z1*w1",
            "z2*w1",
            "(x1 + y2 - u3)*v1 - (z1 + v2)*u2 + u1*w1",
            "x1*v2 + y1*w1 - y3*v1 - z2*u2",
            "(x1 + y2 + u3)*(y2 + u3) + (z1 - v2)^2 - u1*w1",
        ],
        Case::Real => &[
            "z2 - u3 + v1",
            "z3 + u2 - w1",
            "x2*u2 - x3*(z2 - v1) - y2*u1",
            "(-x1 + z2 + u3)*y2 + x2^2 + x3*(x3 - v2)",
            "x2*u3 - x3*(w1 + z3) + y2*z1",
            "(x1 + z2 - u3)*v1 - (x3 - v2)*u1 - u2*w1",
            "x2*v2 - y2*w1",
            "x3*z1 + z3*v1",
            "y2*z1 + z3*v2",
            "x2*z1 + z3*w1",
            "x2*v1 - x3*w1",
            "x2*w1 + x3*v1 - y2*u1 + z2*v2",
            "x1*w1 - x2*u1 + z1*v2 - z3*v1",
            "(x1 + z2 + u3)*(-y2 + z2 + u3) + x2*(x2 - z1 + t*v2) \
             + (x3 - u1 + t*(u2 - w1))*(x3 + v2) + w1^2",
        ],
    };
    src.iter().map(|s| p(s)).collect()
}

/// The published extra conditions for the structure to be Kähler.
pub fn listed_kahler_conditions(case: Case) -> Vec<ScalarPoly> {
    let src: &[&str] = match case {
        Case::Complex => &["y1", "u1", "u3 + y2", "v2 - z1"],
        Case::Real => &[
            "x2 - z1 - t*(x1 + u3)",
            "x3 - u1 + t*u2",
            "y2 - z2 - u3 - t*x2",
            "w1 - t*(x3 + v2)",
        ],
    };
    src.iter().map(|s| p(s)).collect()
}

/// Result of a two-way degree-bounded membership comparison.
#[derive(Clone, Debug)]
pub struct ListComparison {
    /// For each listed quantity: in the span of the computed generators?
    pub listed_in_computed: Vec<(ScalarPoly, bool)>,
    /// For each computed generator: in the span of the listed quantities?
    pub computed_in_listed: Vec<(ScalarPoly, bool)>,
}

impl ListComparison {
    pub fn passes(&self) -> bool {
        self.listed_in_computed.iter().all(|x| x.1) && self.computed_in_listed.iter().all(|x| x.1)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (q, ok) in &self.listed_in_computed {
            if !ok {
                out.push(format!("listed quantity {q} not generated by computed residuals"));
            }
        }
        for (q, ok) in &self.computed_in_listed {
            if !ok {
                out.push(format!("computed residual {q} not generated by listed quantities"));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let side = |v: &[(ScalarPoly, bool)]| -> Vec<Value> {
            v.iter()
                .map(|(q, ok)| json!({"poly": q.to_string(), "member": ok}))
                .collect()
        };
        json!({
            "passes": self.passes(),
            "listed_in_computed": side(&self.listed_in_computed),
            "computed_in_listed": side(&self.computed_in_listed),
        })
    }
}

pub fn compare_lists(
    listed: &[ScalarPoly],
    computed: &[ScalarPoly],
    vars: &[Arc<str>],
    bound: u32,
) -> ListComparison {
    let (a, b) = rayon::join(
        || MembershipBasis::new(computed, bound, vars),
        || MembershipBasis::new(listed, bound, vars),
    );
    let decide = |basis: &MembershipBasis, q: &ScalarPoly| -> bool {
        let Membership { member, .. } = basis.decide(q);
        member
    };
    ListComparison {
        listed_in_computed: listed.iter().map(|q| (q.clone(), decide(&a, q))).collect(),
        computed_in_listed: computed.iter().map(|q| (q.clone(), decide(&b, q))).collect(),
    }
}

/// Listed SKT conditions against integrability ∪ jacobi ∪ {skt}.
pub fn skt_list_comparison(case: Case, bound: u32) -> ListComparison {
    let g = generic_condition_polys(case);
    compare_lists(&listed_conditions(case), &g.all(), &g.variables(), bound)
}

/// Listed Kähler conditions against dω, both modulo the SKT system.
pub fn kahler_list_comparison(case: Case, bound: u32) -> ListComparison {
    let g = generic_condition_polys(case);
    let listed_skt = listed_conditions(case);
    let mut listed = listed_kahler_conditions(case);
    let mut computed = g.kahler.clone();
    let n_listed = listed.len();
    let n_computed = computed.len();
    // Both sides are allowed the SKT system as background generators.
    listed.extend(listed_skt.iter().cloned());
    computed.extend(g.all());
    let mut cmp = compare_lists(&listed, &computed, &g.variables(), bound);
    cmp.listed_in_computed.truncate(n_listed);
    cmp.computed_in_listed.truncate(n_computed);
    cmp
}

/// Kähler via the published list versus dω = 0 directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerCheck {
    pub listed: bool,
    pub direct: bool,
}

impl KahlerCheck {
    pub fn agree(&self) -> bool {
        self.listed == self.direct
    }
}

pub fn kahler_condition_check(case: Case, assignment: &Point) -> Result<KahlerCheck> {
    let g = generic_condition_polys(case);
    let mut point = assignment.clone();
    for v in g.variables() {
        point
            .entry(v.to_string())
            .or_insert_with(|| crate::poly::int(0));
    }
    let vanish = |v: &[ScalarPoly]| -> Result<bool> {
        for q in v {
            if !q.evaluate_constant(&point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let listed = vanish(&listed_kahler_conditions(case))?;
    let direct = vanish(&g.kahler)?;
    Ok(KahlerCheck { listed, direct })
}

/// Exact check of g([X,Y],Z) + g(Y,[X,Z]) = 0 on basis vectors.
pub fn is_ad_invariant(alg: &LieAlgebra, g: &Metric) -> Result<bool> {
    let n = alg.dim();
    let basis = |i: usize| -> Vec<ScalarPoly> {
        (0..n)
            .map(|k| if k == i { ScalarPoly::one() } else { ScalarPoly::zero() })
            .collect()
    };
    for x in 0..n {
        for y in 0..n {
            let xy = alg.bracket(&basis(x), &basis(y))?;
            for z in 0..n {
                let xz = alg.bracket(&basis(x), &basis(z))?;
                let s = &g.inner(&xy, &basis(z)) + &g.inner(&basis(y), &xz);
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct BiinvariantTorsion {
    pub c: Form,
    pub closed: bool,
}

/// c(X,Y,Z) = -g([X,Y],Z) for an ad-invariant metric, and whether dc = 0.
pub fn biinvariant_torsion(alg: &LieAlgebra, g: &Metric) -> Result<BiinvariantTorsion> {
    if !is_ad_invariant(alg, g)? {
        return Err(Error::NotAdInvariant);
    }
    let n = alg.dim();
    let basis = |i: usize| -> Vec<ScalarPoly> {
        (0..n)
            .map(|k| if k == i { ScalarPoly::one() } else { ScalarPoly::zero() })
            .collect()
    };
    let mut coeffs = BTreeMap::new();
    for b in Blade::all(n, 3) {
        let idx = b.indices();
        let xy = alg.bracket(&basis(idx[0] - 1), &basis(idx[1] - 1))?;
        let v = -g.inner(&xy, &basis(idx[2] - 1));
        if !v.is_zero() {
            coeffs.insert(idx, v);
        }
    }
    let c = Form::from_terms(n, 3, coeffs)?;
    let closed = alg.differential(&c)?.is_zero();
    Ok(BiinvariantTorsion { c, closed })
}

/// Killing form K(X, Y) = tr(ad X ad Y) on basis vectors.
pub fn killing_form(alg: &LieAlgebra, point: &Point) -> Result<QMatrix> {
    let ad = alg.ad_matrices(point)?;
    let n = ad.len();
    let mut k = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            k[(i, j)] = ad[i].mul(&ad[j]).trace();
        }
    }
    Ok(k)
}

/// su(2) ⊕ R with minus the Killing form on su(2) and 1 on the centre.
pub fn compact_example() -> (LieAlgebra, Metric) {
    let alg = crate::notation::parse("(32,13,21,0)")
        .expect("su(2) + R")
        .with_name("su2_x_R");
    let k = killing_form(&alg, &Point::new()).expect("constant");
    let mut g = q_to_poly(&k);
    for row in g.iter_mut() {
        for x in row.iter_mut() {
            *x = -x.clone();
        }
    }
    g[3][3] = ScalarPoly::one();
    (alg, Metric::new(g).expect("symmetric"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::poly::int;

    /// Nijenhuis tensor N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] on
    /// basis pairs, as an independent integrability test.
    fn nijenhuis_vanishes(alg: &LieAlgebra, j: &PolyMatrix) -> bool {
        let n = alg.dim();
        let col = |i: usize| -> Vec<ScalarPoly> { (0..n).map(|r| j[r][i].clone()).collect() };
        let unit = |i: usize| -> Vec<ScalarPoly> {
            (0..n)
                .map(|k| if k == i { ScalarPoly::one() } else { ScalarPoly::zero() })
                .collect()
        };
        let apply = |v: &[ScalarPoly]| -> Vec<ScalarPoly> {
            (0..n)
                .map(|r| {
                    (0..n).fold(ScalarPoly::zero(), |acc, c| &acc + &(&j[r][c] * &v[c]))
                })
                .collect()
        };
        for x in 0..n {
            for y in x + 1..n {
                let a = alg.bracket(&col(x), &col(y)).unwrap();
                let b = apply(&alg.bracket(&col(x), &unit(y)).unwrap());
                let c = apply(&alg.bracket(&unit(x), &col(y)).unwrap());
                let d = alg.bracket(&unit(x), &unit(y)).unwrap();
                for k in 0..n {
                    if !(&(&(&a[k] - &b[k]) - &c[k]) - &d[k]).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn deformed_product_form_and_torsion() {
        let t = ScalarPoly::var("t");
        let h = deformed_product_structure(t.clone());
        let want = frame_form(&[
            ("aJa", ScalarPoly::one()),
            ("bJb", ScalarPoly::one()),
            ("aJb", t.clone()),
            ("bJa", t.clone()),
        ])
        .unwrap();
        assert_eq!(fundamental_form(&h), want);
        let d = is_skt(&h).unwrap();
        assert!(!d.holds);
        let mut zero = Point::new();
        zero.insert("t".into(), crate::poly::int(0));
        for r in &d.residual {
            assert!(r.evaluate(&zero).is_zero());
            assert!(r.variables().iter().any(|v| &**v == "t"));
        }
        assert!(is_kahler(&h.evaluate(&zero)).unwrap().holds);
    }

    #[test]
    fn fundamental_forms() {
        let h = generic_structure(Case::Complex);
        assert_eq!(fundamental_form(&h).to_string(), "e12 + e34");
        let r = generic_structure(Case::Real);
        assert_eq!(fundamental_form(&r).to_string(), "e12 + t*e13 + t*e24 + e34");
    }

    #[test]
    fn integrability_matches_nijenhuis() {
        let good = parse("(0,21,0,43)").unwrap();
        let j = standard_j(4);
        assert!(is_integrable(&good, &j).unwrap());
        assert!(nijenhuis_vanishes(&good, &j));
        // d(Ja) containing ab.
        let bad = frame_algebra([&[], &[("ab", p("1"))], &[], &[]]).unwrap();
        assert!(!is_integrable(&bad, &j).unwrap());
        assert!(!nijenhuis_vanishes(&bad, &j));
    }

    #[test]
    fn generic_integrability_is_linear() {
        for case in [Case::Complex, Case::Real] {
            let g = generic_condition_polys(case);
            assert!(!g.integrability.is_empty());
            assert!(g.integrability.iter().all(|q| q.degree() == 1));
        }
    }

    #[test]
    fn zero_point_kills_everything() {
        for case in [Case::Complex, Case::Real] {
            let g = generic_condition_polys(case);
            let mut pt = Point::new();
            for v in g.variables() {
                pt.insert(v.to_string(), int(0));
            }
            for q in g.all() {
                assert!(q.evaluate_constant(&pt).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn compact_torsion_is_closed() {
        let (alg, g) = compact_example();
        assert_eq!(g, Metric::diagonal(&[int(2), int(2), int(2), int(1)]));
        let t = biinvariant_torsion(&alg, &g).unwrap();
        assert!(t.closed);
        assert_eq!(t.c.to_string(), "-2*e123");
        let h3 = parse("(0,0,21,0)").unwrap();
        assert!(matches!(
            biinvariant_torsion(&h3, &Metric::identity(4)),
            Err(Error::NotAdInvariant)
        ));
    }

    #[test]
    fn rejects_incompatible_metric() {
        let alg = LieAlgebra::abelian(4);
        let g = Metric::diagonal(&[int(1), int(2), int(1), int(1)]);
        assert!(HermitianStructure::new(alg, standard_j(4), g).is_err());
    }

    #[test]
    fn json_round_trip() {
        let h = generic_structure(Case::Real);
        let back = HermitianStructure::from_json(h.alg().clone(), &h.to_json()).unwrap();
        assert_eq!(back.metric(), h.metric());
    }
}
