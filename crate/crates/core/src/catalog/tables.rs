//! Low-dimensional solvable algebras: representatives, sample parameter
//! points, the unimodular list and the kernel/quotient claims.

use crate::algebra::{Concrete, LieAlgebra, Subspace};
use crate::error::Result;
use crate::identify::{construct, identify, AlgebraId, Tag};
use crate::poly::{int, rat, Point, Rational};

/// A catalog algebra at a concrete admissible parameter value.
#[derive(Clone, Debug)]
pub struct CatalogAlgebra {
    pub id: AlgebraId,
    pub alg: LieAlgebra,
}

/// Tags with a fixed symbolic representative, in table order.
pub const DIM3_TAGS: [Tag; 5] = [Tag::AffR, Tag::H3, Tag::R3, Tag::R3Lambda, Tag::R3pLambda];

pub const DIM4_TAGS: [Tag; 16] = [
    Tag::Abelian(4),
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

/// The symbolic representative (parameters free).
pub fn symbolic(tag: Tag) -> Result<LieAlgebra> {
    crate::notation::parse(&tag.template())
}

/// Parameter points per tag: boundary and special values plus a few
/// generic ones.
pub fn sample_points(tag: Tag) -> Vec<Vec<Rational>> {
    let v = |xs: &[(i64, i64)]| -> Vec<Rational> { xs.iter().map(|&(a, b)| rat(a, b)).collect() };
    match tag {
        Tag::R3Lambda | Tag::RxR3Lambda => [(-1, 1), (-1, 2), (0, 1), (1, 3), (1, 1), (-2, 3)]
            .iter()
            .map(|&p| v(&[p]))
            .collect(),
        Tag::R3pLambda | Tag::RxR3pLambda | Tag::D4pLambda => {
            [(0, 1), (1, 2), (1, 1), (3, 1)].iter().map(|&p| v(&[p])).collect()
        }
        Tag::R4Lambda => [(-1, 2), (0, 1), (1, 1), (2, 1), (-3, 1)]
            .iter()
            .map(|&p| v(&[p]))
            .collect(),
        Tag::D4Lambda => [(1, 2), (1, 1), (2, 1), (3, 1), (2, 3)]
            .iter()
            .map(|&p| v(&[p]))
            .collect(),
        Tag::R4MuLambda => vec![
            v(&[(-1, 2), (-1, 2)]),
            v(&[(-1, 1), (-1, 2)]),
            v(&[(-2, 3), (-1, 3)]),
            v(&[(-3, 4), (-1, 4)]),
            v(&[(1, 1), (1, 1)]),
            v(&[(1, 2), (1, 1)]),
            v(&[(-1, 3), (1, 2)]),
            v(&[(1, 3), (1, 3)]),
        ],
        Tag::R4pMuLambda => vec![
            v(&[(1, 1), (0, 1)]),
            v(&[(2, 1), (-1, 1)]),
            v(&[(1, 1), (-1, 2)]),
            v(&[(3, 1), (1, 2)]),
            v(&[(1, 2), (2, 1)]),
        ],
        _ => vec![Vec::new()],
    }
}

/// Every dimension-4 catalog algebra at its sample points.
pub fn catalog_algebras() -> Result<Vec<CatalogAlgebra>> {
    let mut out = Vec::new();
    for tag in DIM4_TAGS {
        for params in sample_points(tag) {
            let id = AlgebraId::with(tag, params);
            let alg = construct(&id)?;
            out.push(CatalogAlgebra { id, alg });
        }
    }
    Ok(out)
}

/// Membership in the list of unimodular four-dimensional solvable algebras.
pub fn unimodular_listed(id: &AlgebraId) -> bool {
    let p = |i: usize| id.params.get(i).and_then(|x| x.exact()).cloned();
    match id.tag {
        Tag::Abelian(4) | Tag::RxH3 | Tag::N4 | Tag::D4 => true,
        Tag::RxR3Lambda => p(0) == Some(int(-1)),
        Tag::RxR3pLambda | Tag::D4pLambda => p(0) == Some(int(0)),
        Tag::R4Lambda => p(0) == Some(rat(-1, 2)),
        Tag::R4MuLambda => match (p(0), p(1)) {
            (Some(mu), Some(la)) => la == -int(1) - &mu && mu > int(-1) && mu <= rat(-1, 2),
            _ => false,
        },
        Tag::R4pMuLambda => match (p(0), p(1)) {
            (Some(mu), Some(la)) => la == -mu / int(2),
            _ => false,
        },
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimKind {
    UnimodularKernel,
    /// g / z(g')
    QuotientByDerivedCentre,
}

/// A claimed isomorphism type of a canonical subquotient.
#[derive(Clone, Debug)]
pub struct StructureClaim {
    pub of: AlgebraId,
    pub kind: ClaimKind,
    pub expected: AlgebraId,
}

pub fn structure_claims() -> Vec<StructureClaim> {
    let mut out = vec![
        StructureClaim {
            of: AlgebraId::new(Tag::AffRxAffR),
            kind: ClaimKind::UnimodularKernel,
            expected: AlgebraId::with(Tag::R3Lambda, vec![int(-1)]),
        },
        StructureClaim {
            of: AlgebraId::with(Tag::D4Lambda, vec![int(1)]),
            kind: ClaimKind::UnimodularKernel,
            expected: AlgebraId::new(Tag::H3),
        },
        StructureClaim {
            of: AlgebraId::new(Tag::AffC),
            kind: ClaimKind::UnimodularKernel,
            expected: AlgebraId::with(Tag::R3pLambda, vec![int(0)]),
        },
        StructureClaim {
            of: AlgebraId::new(Tag::D4),
            kind: ClaimKind::QuotientByDerivedCentre,
            expected: AlgebraId::with(Tag::R3Lambda, vec![int(-1)]),
        },
        StructureClaim {
            of: AlgebraId::new(Tag::H4),
            kind: ClaimKind::QuotientByDerivedCentre,
            expected: AlgebraId::new(Tag::R3),
        },
    ];
    for l in [rat(1, 2), int(2), int(3), rat(2, 3), rat(5, 4)] {
        out.push(StructureClaim {
            of: AlgebraId::with(Tag::D4Lambda, vec![l.clone()]),
            kind: ClaimKind::QuotientByDerivedCentre,
            expected: AlgebraId::with(Tag::R3Lambda, vec![(int(1) - &l) / &l]),
        });
    }
    for l in [int(0), rat(1, 2), int(2)] {
        out.push(StructureClaim {
            of: AlgebraId::with(Tag::D4pLambda, vec![l.clone()]),
            kind: ClaimKind::QuotientByDerivedCentre,
            expected: AlgebraId::with(Tag::R3pLambda, vec![l]),
        });
    }
    out
}

/// z(g') as a subspace of g.
pub fn derived_centre(c: &Concrete) -> Result<Subspace> {
    let gp = c.derived_algebra();
    let inner = Concrete::new(&c.restrict(&gp)?, &Point::new())?;
    let vecs: Vec<Vec<Rational>> = inner
        .center()
        .basis()
        .iter()
        .map(|w| {
            let mut v = vec![int(0); c.dim()];
            for (a, b) in w.iter().zip(gp.basis()) {
                for (k, x) in b.iter().enumerate() {
                    v[k] += a * x;
                }
            }
            v
        })
        .collect();
    Ok(Subspace::span(c.dim(), &vecs))
}

/// Compute the subquotient named by a claim and identify it.
pub fn evaluate_claim(claim: &StructureClaim) -> Result<AlgebraId> {
    let alg = construct(&claim.of)?;
    let c = Concrete::new(&alg, &Point::new())?;
    let sub = match claim.kind {
        ClaimKind::UnimodularKernel => c.restrict(&c.unimodular_kernel())?,
        ClaimKind::QuotientByDerivedCentre => c.quotient(&derived_centre(&c)?)?,
    };
    identify(&sub, &Point::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claims_hold() {
        for c in structure_claims() {
            assert_eq!(evaluate_claim(&c).unwrap(), c.expected, "{}", c.of);
        }
    }

    #[test]
    fn samples_are_admissible() {
        for a in catalog_algebras().unwrap() {
            assert!(a.id.validate().is_ok(), "{}", a.id);
        }
    }
}
