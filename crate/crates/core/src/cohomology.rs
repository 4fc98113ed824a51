//! Chevalley–Eilenberg cohomology with trivial coefficients.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Concrete, LieAlgebra};
use crate::error::{Error, Result};
use crate::form::{Blade, Form};
use crate::linalg::QMatrix;
use crate::poly::Point;

/// b₀..b_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub b: Vec<usize>,
}

impl BettiVector {
    pub fn dim(&self) -> usize {
        self.b.len() - 1
    }

    /// b₁..b_n, the form used in tables.
    pub fn reduced(&self) -> &[usize] {
        &self.b[1..]
    }

    pub fn to_json(&self) -> Value {
        json!(self.b)
    }
}

/// Matrix of d: Λᵏ → Λᵏ⁺¹ in the lexicographic blade bases.
fn differential_matrix(alg: &LieAlgebra, k: usize) -> Result<QMatrix> {
    let n = alg.dim();
    let src = Blade::all(n, k);
    let dst = Blade::all(n, k + 1);
    let mut m = QMatrix::zeros(dst.len(), src.len());
    for (c, b) in src.iter().enumerate() {
        let df = alg.differential(&Form::basis(n, &b.indices()))?;
        for (bl, coef) in df.terms() {
            let r = dst.binary_search(&bl).expect("grade k+1 blade");
            m[(r, c)] = coef.as_constant().ok_or_else(|| Error::Parametric {
                what: "differential".into(),
            })?;
        }
    }
    Ok(m)
}

/// bₖ = dim ker d|Λᵏ − rank d|Λᵏ⁻¹ at `point`, exactly.
pub fn betti(alg: &LieAlgebra, point: &Point) -> Result<BettiVector> {
    let a = alg.evaluate(point);
    if !a.is_constant() {
        let vars: Vec<String> = a.variables().iter().map(|v| v.to_string()).collect();
        return Err(Error::Parametric {
            what: format!("unassigned parameters {}", vars.join(", ")),
        });
    }
    if !a.jacobi_check().is_empty() {
        return Err(Error::Unrecognized("Jacobi identity fails".into()));
    }
    let n = a.dim();
    let ranks: Vec<usize> = (0..n)
        .into_par_iter()
        .map(|k| differential_matrix(&a, k).map(|m| m.rank()))
        .collect::<Result<_>>()?;
    let binom = |k: usize| Blade::all(n, k).len();
    let b = (0..=n)
        .map(|k| {
            let out = if k < n { ranks[k] } else { 0 };
            let inc = if k > 0 { ranks[k - 1] } else { 0 };
            binom(k) - out - inc
        })
        .collect();
    Ok(BettiVector { b })
}

/// Alternating sum of the Betti numbers vanishes (n ≥ 1).
pub fn euler_check(bv: &BettiVector) -> bool {
    let s: i64 = bv
        .b
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    bv.b.len() < 2 || s == 0
}

/// Betti numbers of a parametric algebra at several points; the majority
/// value and whether all points agreed.
pub fn betti_majority(alg: &LieAlgebra, points: &[Point]) -> Result<(BettiVector, bool)> {
    let all: Vec<BettiVector> = points.iter().map(|p| betti(alg, p)).collect::<Result<_>>()?;
    let first = all.first().ok_or_else(|| Error::Parametric {
        what: "no evaluation points".into(),
    })?;
    let best = all
        .iter()
        .max_by_key(|v| all.iter().filter(|w| w == v).count())
        .unwrap_or(first)
        .clone();
    let consistent = all.iter().all(|v| *v == best);
    Ok((best, consistent))
}

/// CLI payload: {"betti": [...], "unimodular": bool}.
pub fn betti_report(alg: &LieAlgebra, point: &Point) -> Result<Value> {
    let bv = betti(alg, point)?;
    let unimodular = Concrete::new(alg, point)?.is_unimodular();
    Ok(json!({"betti": bv.to_json(), "unimodular": unimodular}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn b(s: &str) -> Vec<usize> {
        betti(&parse(s).unwrap(), &Point::new()).unwrap().b
    }

    #[test]
    fn small_examples() {
        assert_eq!(b("(0,0,0,0)"), vec![1, 4, 6, 4, 1]);
        assert_eq!(b("(0,0,21)xR"), vec![1, 3, 4, 3, 1]);
        assert_eq!(b("(0,21,-31,32)"), vec![1, 1, 0, 1, 1]);
        assert_eq!(b("(0,0,21)"), vec![1, 2, 2, 1]);
        assert_eq!(b("(0,21)"), vec![1, 1, 0]);
    }

    #[test]
    fn euler() {
        assert!(euler_check(&BettiVector { b: vec![1, 4, 6, 4, 1] }));
        assert!(euler_check(&BettiVector { b: vec![1, 1, 0, 1, 1] }));
        assert!(!euler_check(&BettiVector { b: vec![1, 2, 2, 0, 0] }));
    }

    #[test]
    fn parametric_needs_point() {
        let a = parse("(0,21,λ31)").unwrap();
        assert!(betti(&a, &Point::new()).is_err());
        let mut p = Point::new();
        p.insert("lambda".into(), crate::poly::int(-1));
        assert_eq!(betti(&a, &p).unwrap().b, vec![1, 1, 1, 1]);
    }
}
