//! Solvable four-dimensional algebras with a complex structure but no
//! compatible invariant SKT metric.

use serde_json::{json, Value};

use crate::identify::{AlgebraId, Tag};
use crate::poly::{int, rat, Rational};

#[derive(Clone, Debug)]
pub struct NonSktEntry {
    pub tag: Tag,
    /// Human-readable parameter constraint, empty for rigid algebras.
    pub constraint: &'static str,
    /// Admissible sample points satisfying the constraint.
    pub samples: Vec<AlgebraId>,
}

impl NonSktEntry {
    pub fn contains(&self, id: &AlgebraId) -> bool {
        if id.tag != self.tag {
            return false;
        }
        let p: Vec<Rational> = match id.params.iter().map(|p| p.exact().cloned()).collect::<Option<Vec<_>>>() {
            Some(p) => p,
            None => return false,
        };
        let half = rat(1, 2);
        match self.tag {
            Tag::RxR3Lambda => p[0] == int(1),
            Tag::RxR3pLambda => p[0] > int(0),
            Tag::R4Lambda => p[0] == int(1),
            Tag::R4MuLambda => (p[0] == p[1] && p[0] != -half) || p[1] == int(1),
            Tag::R4pMuLambda => p[1] != int(0) && p[1] != -(&p[0] / int(2)),
            Tag::D4Lambda => p[0] != half && p[0] != int(2),
            _ => true,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.tag.as_str(),
            "constraint": self.constraint,
            "samples": self.samples.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        })
    }
}

pub fn non_skt_list() -> Vec<NonSktEntry> {
    let one = |tag, ps: &[(i64, i64)]| AlgebraId::with(tag, ps.iter().map(|&(a, b)| rat(a, b)).collect());
    let each = |tag, pts: &[&[(i64, i64)]]| pts.iter().map(|ps| one(tag, ps)).collect::<Vec<_>>();
    vec![
        NonSktEntry {
            tag: Tag::RxR3Lambda,
            constraint: "lambda = 1",
            samples: each(Tag::RxR3Lambda, &[&[(1, 1)]]),
        },
        NonSktEntry {
            tag: Tag::RxR3pLambda,
            constraint: "lambda > 0",
            samples: each(Tag::RxR3pLambda, &[&[(1, 2)], &[(1, 1)], &[(3, 1)]]),
        },
        NonSktEntry {
            tag: Tag::AffC,
            constraint: "",
            samples: vec![AlgebraId::new(Tag::AffC)],
        },
        NonSktEntry {
            tag: Tag::R4Lambda,
            constraint: "lambda = 1",
            samples: each(Tag::R4Lambda, &[&[(1, 1)]]),
        },
        NonSktEntry {
            tag: Tag::R4MuLambda,
            constraint: "mu = lambda != -1/2, or mu <= lambda = 1",
            samples: each(
                Tag::R4MuLambda,
                &[&[(1, 2), (1, 2)], &[(-1, 3), (-1, 3)], &[(-1, 2), (1, 1)], &[(1, 3), (1, 1)]],
            ),
        },
        NonSktEntry {
            tag: Tag::R4pMuLambda,
            constraint: "lambda != 0, lambda != -mu/2",
            samples: each(Tag::R4pMuLambda, &[&[(1, 1), (1, 1)], &[(1, 2), (-1, 1)], &[(2, 1), (1, 3)]]),
        },
        NonSktEntry {
            tag: Tag::D4Lambda,
            constraint: "lambda != 1/2, 2",
            samples: each(Tag::D4Lambda, &[&[(1, 1)], &[(3, 1)], &[(5, 4)]]),
        },
        NonSktEntry {
            tag: Tag::H4,
            constraint: "",
            samples: vec![AlgebraId::new(Tag::H4)],
        },
    ]
}

/// Whether `id` is on the list.
pub fn listed_non_skt(id: &AlgebraId) -> bool {
    non_skt_list().iter().any(|e| e.contains(id))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        assert!(listed_non_skt(&AlgebraId::new(Tag::AffC)));
        assert!(!listed_non_skt(&AlgebraId::new(Tag::D4)));
        assert!(listed_non_skt(&AlgebraId::with(Tag::D4Lambda, vec![int(3)])));
        assert!(!listed_non_skt(&AlgebraId::with(Tag::D4Lambda, vec![rat(1, 2)])));
        assert!(!listed_non_skt(&AlgebraId::with(Tag::R4MuLambda, vec![rat(-1, 2), rat(-1, 2)])));
    }

    #[test]
    fn samples_valid_and_listed() {
        for e in non_skt_list() {
            for s in &e.samples {
                s.validate().unwrap();
                assert!(e.contains(s), "{s}");
            }
        }
    }

    #[test]
    fn disjoint_from_skt_table() {
        for row in super::super::table4::table4_rows() {
            for (_, id) in row.ids() {
                assert!(!listed_non_skt(&id), "{id}");
            }
        }
    }
}
