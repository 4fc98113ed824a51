//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion is in an unexpected state.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use skt_core::algebra::Concrete;
use skt_core::catalog::families::{sample_points, ALL_FAMILIES};
use skt_core::catalog::tables::{evaluate_claim, symbolic, DIM3_TAGS, DIM4_TAGS};
use skt_core::catalog::{
    build_family, catalog_algebras, structure_claims, table4_rows, unimodular_listed, verify_family,
};
use skt_core::cohomology::betti;
use skt_core::hermitian::{
    biinvariant_torsion, compact_example, compare_lists, generic_condition_polys, is_kahler, is_skt,
    kahler_list_comparison, lee_coclosed, listed_conditions, deformed_product_structure, skt_list_comparison,
    Case, HermitianStructure,
};
use skt_core::identify::{construct, AlgebraId, Tag};
use skt_core::poly::{int, rat};
use skt_core::search::{search_skt, SearchConfig, Verdict};
use skt_core::{Metric, Point, Rational, ScalarPoly};

const JACOBI_BUDGET: Duration = Duration::from_secs(1);
const BETTI_BUDGET: Duration = Duration::from_secs(5);
const FAMILY_BUDGET: Duration = Duration::from_secs(30);
const LIST_BUDGET: Duration = Duration::from_secs(60);
const SEARCH_BUDGET: Duration = Duration::from_secs(600);
const MEMBERSHIP_DEGREE: u32 = 3;
const FAMILY_POINTS: usize = 20;
const LEE_POINTS: usize = 50;
const SEED: u64 = 20;
// Reported search thresholds.
const FOUND_BELOW: f64 = 1e-12;
const NOT_FOUND_ABOVE: f64 = 1e-10;
const RESTARTS: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
    /// Whether this outcome is the one the run expects.
    expected: bool,
}

impl Outcome {
    fn plain(pass: bool, detail: String) -> Outcome {
        Outcome {
            pass,
            detail,
            expected: pass,
        }
    }
}

// ---- independent cohomology oracle -------------------------------------

fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { int(1) } else { int(0) }).collect()
}

/// e^I evaluated on vectors: det(v_r[I_s]).
fn eval_blade(idx: &[usize], vs: &[Vec<Rational>]) -> Rational {
    let m: Vec<Vec<Rational>> = vs.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect();
    det(&m)
}

/// Betti numbers from dα(X0..Xk) = Σ_{i<j} (-1)^{i+j} α([Xi,Xj], ...).
fn oracle_betti(c: &Concrete) -> Vec<usize> {
    let n = c.dim();
    let dmat = |k: usize| -> Vec<Vec<Rational>> {
        let src = subsets(n, k);
        let dst = subsets(n, k + 1);
        dst.iter()
            .map(|jset| {
                src.iter()
                    .map(|iset| {
                        let mut acc = Rational::zero();
                        for a in 0..jset.len() {
                            for b in a + 1..jset.len() {
                                let mut vs = vec![c.bracket(&unit(n, jset[a]), &unit(n, jset[b]))];
                                for (r, &x) in jset.iter().enumerate() {
                                    if r != a && r != b {
                                        vs.push(unit(n, x));
                                    }
                                }
                                let v = eval_blade(iset, &vs);
                                if (a + b) % 2 == 0 {
                                    acc += v;
                                } else {
                                    acc -= v;
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let ranks: Vec<usize> = (0..n).map(|k| rank(dmat(k))).collect();
    (1..=n)
        .map(|k| {
            let dim = subsets(n, k).len();
            let out = if k < n { ranks[k] } else { 0 };
            dim - out - ranks[k - 1]
        })
        .collect()
}

// ---- criteria ----------------------------------------------------------

fn c1_jacobi() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for tag in DIM3_TAGS.iter().chain(DIM4_TAGS.iter()) {
        let alg = symbolic(*tag).expect("catalog template");
        count += 1;
        if !alg.jacobi_check().is_empty() {
            bad.push(tag.as_str());
        }
    }
    let t = start.elapsed();
    Outcome::plain(
        bad.is_empty() && t < JACOBI_BUDGET,
        format!("{count} symbolic algebras, failures {bad:?}, {t:.2?}"),
    )
}

fn c2_betti() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for row in table4_rows() {
        for (_, id) in row.ids() {
            let alg = construct(&id).expect("table algebra");
            let b = betti(&alg, &Point::new()).expect("constant");
            let oracle = oracle_betti(&Concrete::new(&alg, &Point::new()).unwrap());
            count += 1;
            if b.reduced() != row.betti || oracle != row.betti {
                bad.push(format!("{id}: engine {:?} oracle {oracle:?} table {:?}", b.reduced(), row.betti));
            }
        }
    }
    let t = start.elapsed();
    Outcome::plain(
        bad.is_empty() && t < BETTI_BUDGET,
        format!("{count} algebras over 13 rows, mismatches {bad:?}, {t:.2?}"),
    )
}

fn c3_unimodular() -> Outcome {
    let mut bad = Vec::new();
    let all = catalog_algebras().expect("catalog");
    for a in &all {
        let c = Concrete::new(&a.alg, &Point::new()).unwrap();
        let computed = c.is_unimodular();
        let listed = unimodular_listed(&a.id);
        let b4 = betti(&a.alg, &Point::new()).unwrap().b[4] == 1;
        if computed != listed || computed != b4 {
            bad.push(format!("{}: computed {computed} listed {listed} b4=1 {b4}", a.id));
        }
    }
    Outcome::plain(bad.is_empty(), format!("{} algebras, disagreements {bad:?}", all.len()))
}

fn c4_claims() -> Outcome {
    let mut bad = Vec::new();
    let claims = structure_claims();
    for c in &claims {
        match evaluate_claim(c) {
            Ok(id) if id == c.expected => {}
            Ok(id) => bad.push(format!("{}: got {id}, expected {}", c.of, c.expected)),
            Err(e) => bad.push(format!("{}: {e}", c.of)),
        }
    }
    Outcome::plain(bad.is_empty(), format!("{} claims, failures {bad:?}", claims.len()))
}

fn c5_families() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for f in ALL_FAMILIES {
        let r = verify_family(f, FAMILY_POINTS, SEED);
        if !r.passes() {
            bad.push(format!("{f}: {:?}", r.failures));
        }
    }
    let t = start.elapsed();
    Outcome::plain(
        bad.is_empty() && t < FAMILY_BUDGET,
        format!("12 families x {FAMILY_POINTS} points, failures {bad:?}, {t:.2?}"),
    )
}

/// The real list as printed carries t·v2 inside x2(x2 - z1 + t·v2); the
/// computed system needs t·z2 there. The run expects exactly that single
/// discrepancy and checks that the corrected list is equivalent.
fn c6_lists() -> Outcome {
    let start = Instant::now();
    let complex = skt_list_comparison(Case::Complex, MEMBERSHIP_DEGREE);
    let real = skt_list_comparison(Case::Real, MEMBERSHIP_DEGREE);
    let kc = kahler_list_comparison(Case::Complex, MEMBERSHIP_DEGREE);
    let kr = kahler_list_comparison(Case::Real, MEMBERSHIP_DEGREE);

    let v = ScalarPoly::var;
    let mut corrected = listed_conditions(Case::Real);
    let fix = &(&v("t") * &v("x2")) * &(&v("z2") - &v("v2"));
    let last = corrected.len() - 1;
    corrected[last] = &corrected[last] + &fix;
    let g = generic_condition_polys(Case::Real);
    let fixed = compare_lists(&corrected, &g.all(), &g.variables(), MEMBERSHIP_DEGREE);
    let t = start.elapsed();

    let printed = listed_conditions(Case::Real);
    let misses: Vec<&ScalarPoly> = real.listed_in_computed.iter().filter(|x| !x.1).map(|x| &x.0).collect();
    let known = misses.len() == 1
        && *misses[0] == printed[last]
        && real.computed_in_listed.iter().filter(|x| !x.1).count() == 1
        && fixed.passes();

    let pass = complex.passes() && real.passes() && kc.passes() && kr.passes() && t < LIST_BUDGET;
    let mut failures = Vec::new();
    for (name, c) in [("complex SKT", &complex), ("real SKT", &real), ("complex Kahler", &kc), ("real Kahler", &kr)] {
        for f in c.failures() {
            failures.push(format!("{name}: {f}"));
        }
    }
    let detail = format!(
        "complex SKT {}, real SKT {}, complex Kahler {}, real Kahler {}; {}; real list with t*z2 in place of t*v2: {}; {t:.2?}",
        verdict(complex.passes()),
        verdict(real.passes()),
        verdict(kc.passes()),
        verdict(kr.passes()),
        if failures.is_empty() { "no failing quantity".to_string() } else { failures.join("; ") },
        verdict(fixed.passes()),
    );
    Outcome {
        pass,
        detail,
        expected: !pass && known && complex.passes() && kc.passes() && kr.passes() && t < LIST_BUDGET,
    }
}

fn c7_deformed_product() -> Outcome {
    let h = deformed_product_structure(ScalarPoly::var("t"));
    let skt = is_skt(&h).unwrap();
    let multiple_of_t = !skt.residual.is_empty()
        && skt
            .residual
            .iter()
            .all(|r| !r.is_zero() && r.terms().all(|(m, _)| m.exponent("t") >= 1));
    let at_zero = deformed_product_structure(ScalarPoly::zero());
    let skt0 = is_skt(&at_zero).unwrap().holds;
    let kahler0 = is_kahler(&at_zero).unwrap().holds;
    let half = deformed_product_structure(ScalarPoly::constant(rat(1, 2)));
    let skt_half = is_skt(&half).unwrap().holds;
    let residual: Vec<String> = skt.residual.iter().map(|r| r.to_string()).collect();
    Outcome::plain(
        multiple_of_t && skt0 && kahler0 && !skt_half,
        format!(
            "dc residual {residual:?}, divisible by t {multiple_of_t}, SKT at t=0 {skt0}, dω=0 at t=0 {kahler0}, SKT at t=1/2 {skt_half}"
        ),
    )
}

fn c8_lee() -> Outcome {
    let empty = Point::new();
    let mut bad = Vec::new();
    let (mut skt_true, mut skt_false, mut total) = (0, 0, 0);
    let scales = [rat(2, 1), rat(1, 3), rat(5, 2)];
    for f in ALL_FAMILIES {
        for (n, p) in sample_points(f, LEE_POINTS, SEED).into_iter().enumerate() {
            let inst = build_family(f, &p).expect("admissible sample");
            let s = &scales[n % scales.len()];
            let perturbed = HermitianStructure::new(
                inst.h.alg().clone(),
                inst.h.j().clone(),
                Metric::diagonal(&[int(1), int(1), s.clone(), s.clone()]),
            )
            .expect("diag(1,1,s,s) is J-invariant");
            for h in [&inst.h, &perturbed] {
                let a = is_skt(h).unwrap().holds;
                let b = lee_coclosed(h, &empty).unwrap();
                total += 1;
                if a {
                    skt_true += 1;
                } else {
                    skt_false += 1;
                }
                if a != b {
                    bad.push(format!("{f} at {p:?}: skt {a} lee {b}"));
                }
            }
        }
    }
    let both_sides = skt_true > 0 && skt_false > 0;
    Outcome::plain(
        bad.is_empty() && both_sides,
        format!(
            "{total} instances ({skt_true} SKT, {skt_false} not), disagreements {}",
            if bad.is_empty() { "none".to_string() } else { bad.join("; ") }
        ),
    )
}

fn c9_compact() -> Outcome {
    let (alg, g) = compact_example();
    match biinvariant_torsion(&alg, &g) {
        Ok(t) => {
            let only_volume = t.c.terms().all(|(b, _)| b.indices() == vec![1, 2, 3]);
            let nonzero = !t.c.is_zero();
            Outcome::plain(
                nonzero && t.closed && only_volume,
                format!(
                    "c = {} e123, nonzero {nonzero}, dc = 0 {}",
                    t.c.coefficient(&[1, 2, 3]),
                    t.closed
                ),
            )
        }
        Err(e) => Outcome::plain(false, format!("error {e}")),
    }
}

fn c10_search() -> Outcome {
    let start = Instant::now();
    let cfg = SearchConfig {
        restarts: RESTARTS,
        success_threshold: FOUND_BELOW,
        failure_floor: NOT_FOUND_ABOVE,
        ..SearchConfig::default()
    };
    let mut bad = Vec::new();
    let mut worst_found: f64 = 0.0;
    let mut found = 0;
    for row in table4_rows() {
        for (_, id) in row.ids() {
            let r = search_skt(&construct(&id).unwrap(), &Point::new(), &cfg).unwrap();
            if r.verdict == Verdict::Found && r.best_residual < FOUND_BELOW {
                found += 1;
                worst_found = worst_found.max(r.best_residual);
            } else {
                bad.push(format!("{id}: {} {:e}", r.verdict.as_str(), r.best_residual));
            }
        }
    }
    let negatives = [
        AlgebraId::new(Tag::AffC),
        AlgebraId::new(Tag::H4),
        AlgebraId::with(Tag::R4Lambda, vec![int(1)]),
        AlgebraId::with(Tag::D4Lambda, vec![int(3)]),
    ];
    let mut best_neg = BTreeMap::new();
    for id in &negatives {
        let r = search_skt(&construct(id).unwrap(), &Point::new(), &cfg).unwrap();
        best_neg.insert(id.to_string(), format!("{:.2e}", r.best_residual));
        if r.verdict != Verdict::NotFound || r.best_residual <= NOT_FOUND_ABOVE {
            bad.push(format!("{id}: {} {:e}", r.verdict.as_str(), r.best_residual));
        }
    }
    let t = start.elapsed();
    Outcome::plain(
        bad.is_empty() && t < SEARCH_BUDGET,
        format!(
            "numerical evidence only: {found} table algebras found (worst {worst_found:.1e}), not found {best_neg:?}, failures {bad:?}, {t:.1?}"
        ),
    )
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("jacobi suite", c1_jacobi),
        ("betti suite", c2_betti),
        ("unimodularity", c3_unimodular),
        ("identification claims", c4_claims),
        ("family verification", c5_families),
        ("condition list equivalence", c6_lists),
        ("deformed product structure", c7_deformed_product),
        ("lee form equivalence", c8_lee),
        ("compact torsion", c9_compact),
        ("search evidence", c10_search),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let note = if o.expected {
            if o.pass { "" } else { " (known misprint in the printed list, expected)" }
        } else {
            unexpected.push(i + 1);
            " (UNEXPECTED)"
        };
        println!("criterion {:>2} {}: {name}: {}{note}", i + 1, verdict(o.pass), o.detail);
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria in expected state");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected state for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
