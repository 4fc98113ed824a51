use nalgebra::Matrix4;
use proptest::prelude::*;

use skt_core::algebra::Concrete;
use skt_core::catalog::families::{FamilyId, ALL_FAMILIES};
use skt_core::catalog::tables::{symbolic, DIM3_TAGS, DIM4_TAGS};
use skt_core::catalog::{build_family, catalog_algebras};
use skt_core::cohomology::betti;
use skt_core::form::{hodge_star, j_action};
use skt_core::hermitian::{
    bismut_torsion, generic_assignment, is_integrable, is_kahler, is_skt, real_case_metric,
    standard_j, HermitianStructure,
};
use skt_core::identify::{construct, identify, sample_params, AlgebraId};
use skt_core::notation::{parse, print};
use skt_core::poly::{int, rat};
use skt_core::search::{induced_pair, search_skt, SearchConfig};
use skt_core::{Error, Form, LieAlgebra, Metric, Orientation, Point, ScalarPoly};

const PARAM_TOL: f64 = 1e-12;
const MAX_COND: f64 = 1e3;

fn small() -> impl Strategy<Value = ScalarPoly> {
    (-4i64..=4).prop_map(ScalarPoly::int)
}

fn form(dim: usize, grade: usize) -> impl Strategy<Value = Form> {
    let n = skt_core::form::Blade::all(dim, grade).len();
    proptest::collection::vec(small(), n).prop_map(move |cs| {
        let blades = skt_core::form::Blade::all(dim, grade);
        Form::from_terms(dim, grade, blades.into_iter().map(|b| b.indices()).zip(cs)).unwrap()
    })
}

fn graded_form(dim: usize) -> impl Strategy<Value = Form> {
    (0..=dim).prop_flat_map(move |k| form(dim, k))
}

fn catalog() -> Vec<LieAlgebra> {
    catalog_algebras().unwrap().into_iter().map(|a| a.alg).collect()
}

/// Random structure constants on R^3, not necessarily Lie.
fn raw_algebra() -> impl Strategy<Value = LieAlgebra> {
    proptest::collection::vec(-2i64..=2, 9).prop_map(|c| {
        let pairs = [[1, 2], [1, 3], [2, 3]];
        let d = (0..3)
            .map(|k| {
                Form::from_terms(3, 2, pairs.iter().enumerate().map(|(p, ix)| (ix.to_vec(), ScalarPoly::int(c[3 * k + p]))))
                    .unwrap()
            })
            .collect();
        LieAlgebra::new(d).unwrap()
    })
}

fn unit(n: usize, i: usize) -> Vec<ScalarPoly> {
    (0..n).map(|k| if k == i { ScalarPoly::one() } else { ScalarPoly::zero() }).collect()
}

/// Σ_cyc [[x,y],z] on basis triples, straight from the bracket.
fn jacobiator_vanishes(alg: &LieAlgebra) -> bool {
    let n = alg.dim();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let term = |a: usize, b: usize, c: usize| {
                    let ab = alg.bracket(&unit(n, a), &unit(n, b)).unwrap();
                    alg.bracket(&ab, &unit(n, c)).unwrap()
                };
                let (p, q, r) = (term(x, y, z), term(y, z, x), term(z, x, y));
                if (0..n).any(|k| !(&(&p[k] + &q[k]) + &r[k]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

fn sign(k: usize) -> ScalarPoly {
    if k % 2 == 0 {
        ScalarPoly::one()
    } else {
        ScalarPoly::int(-1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_graded_commutative_and_associative(a in graded_form(4), b in graded_form(4), c in graded_form(4)) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab.clone(), ba.scale(&sign(a.grade() * b.grade())));
        prop_assert_eq!(ab.wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }

    #[test]
    fn differential_is_antiderivation(i in 0usize..46, a in graded_form(4), b in graded_form(4)) {
        let alg = &catalog()[i];
        let lhs = alg.differential(&a.wedge(&b).unwrap()).unwrap();
        let rhs = &alg.differential(&a).unwrap().wedge(&b).unwrap()
            + &a.wedge(&alg.differential(&b).unwrap()).unwrap().scale(&sign(a.grade()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_iff_jacobi(alg in raw_algebra()) {
        let dd_zero = alg.jacobi_forms().iter().all(Form::is_zero);
        prop_assert_eq!(dd_zero, alg.jacobi_check().is_empty());
        prop_assert_eq!(dd_zero, jacobiator_vanishes(&alg));
    }

    #[test]
    fn double_star_sign(x in graded_form(4), s in 1i64..=5, t in 1i64..=5) {
        // det = s²t² is a square, so the star stays rational.
        let g = Metric::diagonal(&[int(s), int(s), int(t), int(t)]);
        let k = x.grade();
        let twice = hodge_star(&g, Orientation::Positive, &hodge_star(&g, Orientation::Positive, &x).unwrap()).unwrap();
        prop_assert_eq!(twice, x.scale(&sign(k * (4 - k))));
    }

    #[test]
    fn j_twice_is_sign(x in graded_form(4)) {
        let j = standard_j(4);
        let k = x.grade();
        prop_assert_eq!(j_action(&j, &j_action(&j, &x).unwrap()).unwrap(), x.scale(&sign(k)));
    }

    #[test]
    fn identify_inverts_construct(tag in 0usize..21, k in 0u64..200) {
        let all: Vec<_> = DIM3_TAGS.iter().chain(DIM4_TAGS.iter()).copied().collect();
        let id = AlgebraId::with(all[tag], sample_params(all[tag], k));
        prop_assume!(id.validate().is_ok());
        let alg = construct(&id).unwrap();
        prop_assert_eq!(identify(&alg, &Point::new()).unwrap(), id);
    }

    #[test]
    fn betti_top_and_euler(i in 0usize..46) {
        let alg = &catalog()[i];
        let b = betti(alg, &Point::new()).unwrap().b;
        prop_assert_eq!(b[0], 1);
        prop_assert!(b[4] <= 1);
        let chi: i64 = b.iter().enumerate().map(|(k, x)| if k % 2 == 0 { *x as i64 } else { -(*x as i64) }).sum();
        prop_assert_eq!(chi, 0);
    }

    #[test]
    fn kahler_iff_torsion_free(i in 0usize..46, s in 1i64..=4, t in -3i64..=3, real in any::<bool>()) {
        let alg = catalog()[i].clone();
        let g = if real {
            real_case_metric(ScalarPoly::constant(rat(t, 4)))
        } else {
            Metric::diagonal(&[int(1), int(1), int(s), int(s)])
        };
        let h = HermitianStructure::new(alg, standard_j(4), g).unwrap();
        let c = bismut_torsion(&h).unwrap();
        let kahler = is_kahler(&h).unwrap().holds;
        prop_assert_eq!(c.is_zero(), kahler);
        if kahler {
            prop_assert!(is_skt(&h).unwrap().holds);
        }
    }

    #[test]
    fn family_side_conditions(f in 0usize..12, seed in any::<u64>()) {
        let id = ALL_FAMILIES[f];
        let p = skt_core::catalog::families::sample_points(id, 1, seed).pop().unwrap();
        let inst = build_family(id, &p).unwrap();
        let alg = inst.h.alg();
        prop_assert!(alg.jacobi_check().is_empty());
        prop_assert!(is_integrable(alg, inst.h.j()).unwrap());
        prop_assert!(is_skt(&inst.h).unwrap().holds);
        prop_assert_eq!(identify(alg, &Point::new()).unwrap(), inst.claimed_id.clone());
        let a = generic_assignment(id.case(), alg).expect("normal form");
        let get = |n: &str| a.get(n).cloned().unwrap_or_else(ScalarPoly::zero);
        let (x1, y2) = (get("x1"), get("y2"));
        match id {
            FamilyId::OneDimR30 => {
                prop_assert!((&get("u1") * &get("w1") - &get("u3") * &get("u3")).is_zero());
            }
            FamilyId::ThreeDimAbY2Zero | FamilyId::ThreeDimAbY3Zero | FamilyId::ThreeDimAbGeneral => {
                prop_assert!((&y2 * &(&(&ScalarPoly::int(2) * &y2) + &x1)).is_zero());
            }
            FamilyId::H3D4 | FamilyId::H3D42 => {
                let two_y2 = &ScalarPoly::int(2) * &y2;
                prop_assert!((&(&two_y2 + &x1) * &(&y2 + &x1)).is_zero());
            }
            _ => {}
        }
    }

    #[test]
    fn notation_round_trip(entries in proptest::collection::vec(
        proptest::collection::vec((-3i64..=3, 1usize..=4, 1usize..=4), 0..4), 4)) {
        let mut parts = Vec::new();
        for terms in &entries {
            let mut s = String::new();
            for (c, i, j) in terms {
                if i == j || *c == 0 {
                    continue;
                }
                if !s.is_empty() && *c > 0 {
                    s.push('+');
                }
                match c {
                    1 => {}
                    -1 => s.push('-'),
                    c => s.push_str(&format!("{c}.")),
                }
                s.push_str(&format!("{i}{j}"));
            }
            parts.push(if s.is_empty() { "0".to_string() } else { s });
        }
        let text = format!("({})", parts.join(","));
        let alg = parse(&text).unwrap();
        prop_assert_eq!(parse(&print(&alg).unwrap()).unwrap(), alg);
    }

    #[test]
    fn junk_is_rejected_at_its_position(tag in 0usize..21, at in 0usize..64) {
        let all: Vec<_> = DIM3_TAGS.iter().chain(DIM4_TAGS.iter()).copied().collect();
        let text = print(&symbolic(all[tag]).unwrap()).unwrap();
        let chars: Vec<char> = text.chars().collect();
        let at = 1 + at % (chars.len() - 1);
        let mut broken: String = chars[..at].iter().collect();
        broken.push('#');
        broken.extend(chars[at..].iter());
        match parse(&broken) {
            Err(Error::Syntax { position, .. }) => prop_assert_eq!(position, at),
            other => prop_assert!(false, "{broken}: {other:?}"),
        }
    }

    #[test]
    fn induced_pair_is_compatible(e in proptest::collection::vec(-1.0f64..1.0, 16)) {
        let a = Matrix4::from_iterator(e.into_iter()) + Matrix4::identity();
        let sv = a.singular_values();
        prop_assume!(sv.min() > 0.0 && sv.max() / sv.min() < MAX_COND);
        let (j, g) = induced_pair(&a).unwrap();
        let scale = j.norm() * j.norm() * g.norm();
        prop_assert!((j * j + Matrix4::identity()).norm() <= PARAM_TOL * j.norm() * j.norm());
        prop_assert!((j.transpose() * g * j - g).norm() <= PARAM_TOL * scale);
        prop_assert!((g - g.transpose()).norm() <= PARAM_TOL * g.norm());
        prop_assert!(g.symmetric_eigenvalues().min() > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn search_is_deterministic(seed in any::<u64>(), i in 0usize..46) {
        let alg = &catalog()[i];
        let cfg = SearchConfig { restarts: 4, max_iters: 25, batch: 2, seed, ..SearchConfig::default() };
        let a = search_skt(alg, &Point::new(), &cfg).unwrap();
        let b = search_skt(alg, &Point::new(), &cfg).unwrap();
        let bits = |r: &skt_core::search::SearchResult| -> Vec<(usize, u64, usize)> {
            r.trace.iter().map(|t| (t.index, t.residual.to_bits(), t.iters)).collect()
        };
        prop_assert_eq!(bits(&a), bits(&b));
        prop_assert_eq!(a.a, b.a);
    }
}

#[test]
fn chi_vanishes_on_derived_algebra() {
    for alg in catalog() {
        let c = Concrete::new(&alg, &Point::new()).unwrap();
        let chi = c.chi();
        for v in c.derived_algebra().basis() {
            let s = chi.iter().zip(v).fold(int(0), |acc, (a, b)| acc + a * b);
            assert_eq!(s, int(0));
        }
    }
}

#[test]
fn series_inclusions() {
    for alg in catalog() {
        let c = Concrete::new(&alg, &Point::new()).unwrap();
        let derived = c.derived_series();
        let lower = c.lower_central_series();
        for (d, l) in derived.iter().zip(&lower) {
            assert!(d.is_subspace_of(l));
        }
    }
}

#[test]
fn junk_everywhere_in_catalog_strings() {
    for tag in DIM3_TAGS.iter().chain(DIM4_TAGS.iter()) {
        let text = print(&symbolic(*tag).unwrap()).unwrap();
        let chars: Vec<char> = text.chars().collect();
        for at in 1..chars.len() {
            let mut broken: String = chars[..at].iter().collect();
            broken.push('#');
            broken.extend(chars[at..].iter());
            match parse(&broken) {
                Err(Error::Syntax { position, .. }) => assert_eq!(position, at, "{broken}"),
                other => panic!("{broken}: {other:?}"),
            }
        }
    }
}
