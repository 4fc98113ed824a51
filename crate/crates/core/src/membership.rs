//! Degree-bounded linear membership: is `target` a linear combination of
//! products `m·g` (m a monomial, deg(m·g) ≤ bound)?
//!
//! The products are reduced into an echelon basis keyed by leading
//! monomial. A target lies in the span iff top-reduction sends it to zero.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::poly::{Monomial, Rational, ScalarPoly};

type Cert = BTreeMap<(usize, Monomial), Rational>;

fn cert_axpy(acc: &mut Cert, c: &Rational, other: &Cert) {
    for (k, v) in other {
        let e = acc.entry(k.clone()).or_insert_with(Rational::zero);
        *e += c * v;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

struct Row {
    poly: ScalarPoly,
    cert: Cert,
}

/// Echelon basis of the degree-bounded products of a generator list.
pub struct MembershipBasis {
    generators: Vec<ScalarPoly>,
    bound: u32,
    rows: BTreeMap<Monomial, Row>,
}

/// Outcome of a membership query. `certificate[i]` multiplies generator i.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub certificate: Option<Vec<ScalarPoly>>,
}

impl MembershipBasis {
    pub fn new(generators: &[ScalarPoly], bound: u32, extra_vars: &[Arc<str>]) -> Self {
        let mut vars: BTreeSet<Arc<str>> = extra_vars.iter().cloned().collect();
        for g in generators {
            vars.extend(g.variables());
        }
        let vars: Vec<Arc<str>> = vars.into_iter().collect();
        let mut basis = MembershipBasis {
            generators: generators.to_vec(),
            bound,
            rows: BTreeMap::new(),
        };
        for (gi, g) in generators.iter().enumerate() {
            if g.is_zero() || g.degree() > bound {
                continue;
            }
            for m in Monomial::all_up_to(&vars, bound - g.degree()) {
                let mut cert = Cert::new();
                cert.insert((gi, m.clone()), Rational::from_integer(1.into()));
                basis.insert(g.mul_monomial(&m), cert);
            }
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Top-reduce `p`, returning the remainder and the accumulated
    /// combination that was subtracted.
    fn reduce(&self, mut p: ScalarPoly, mut cert: Cert) -> (ScalarPoly, Cert) {
        loop {
            let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return (p, cert);
            };
            let Some(row) = self.rows.get(&lm) else {
                return (p, cert);
            };
            // Rows are monic in their leading term.
            p -= &row.poly.scale(&lc);
            cert_axpy(&mut cert, &-lc, &row.cert);
        }
    }

    fn insert(&mut self, p: ScalarPoly, cert: Cert) {
        let (r, cert) = self.reduce(p, cert);
        if let Some((lm, lc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let inv = lc.recip();
            let mut c2 = Cert::new();
            cert_axpy(&mut c2, &inv, &cert);
            self.rows.insert(lm, Row {
                poly: r.scale(&inv),
                cert: c2,
            });
        }
    }

    pub fn decide(&self, target: &ScalarPoly) -> Membership {
        if target.degree() > self.bound {
            return Membership {
                member: false,
                certificate: None,
            };
        }
        let (r, cert) = self.reduce(target.clone(), Cert::new());
        if !r.is_zero() {
            return Membership {
                member: false,
                certificate: None,
            };
        }
        // target - Σ c·(m·g) = 0, so the multipliers are -cert.
        let mut mult = vec![ScalarPoly::zero(); self.generators.len()];
        for ((gi, m), c) in cert {
            mult[gi] -= &ScalarPoly::from_term(m, c);
        }
        Membership {
            member: true,
            certificate: Some(mult),
        }
    }
}

pub fn poly_linear_membership(
    target: &ScalarPoly,
    generators: &[ScalarPoly],
    degree_bound: u32,
) -> Membership {
    let vars: Vec<Arc<str>> = target.variables().into_iter().collect();
    MembershipBasis::new(generators, degree_bound, &vars).decide(target)
}

/// Σ h_i g_i, for checking certificates.
pub fn combine(multipliers: &[ScalarPoly], generators: &[ScalarPoly]) -> ScalarPoly {
    multipliers
        .iter()
        .zip(generators)
        .fold(ScalarPoly::zero(), |acc, (h, g)| &acc + &(h * g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ScalarPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let gens = [p("x - 1")];
        let r = poly_linear_membership(&p("x^2 - 1"), &gens, 2);
        assert!(r.member);
        let cert = r.certificate.unwrap();
        assert_eq!(cert[0], p("x + 1"));
        assert_eq!(combine(&cert, &gens), p("x^2 - 1"));
    }

    #[test]
    fn degree_obstruction() {
        assert!(!poly_linear_membership(&p("x"), &[p("x^2")], 3).member);
        assert!(!poly_linear_membership(&p("x^3"), &[p("x^2")], 2).member);
    }

    #[test]
    fn multivariate_certificate() {
        let gens = [p("x*y - z"), p("y^2 - 1")];
        let target = p("x*y^3 - z*y^2 + y^2 - 1 + 2*x*y - 2*z");
        let r = poly_linear_membership(&target, &gens, 4);
        assert!(r.member);
        assert_eq!(combine(&r.certificate.unwrap(), &gens), target);
    }
}
