//! Numerical search for invariant SKT structures in dimension four.
//!
//! A compatible pair (J, g) is written as J = A J0 A⁻¹, g = A⁻ᵀA⁻¹ for an
//! invertible A. In the frame given by the columns of A the pair is
//! standard, so the residual only needs the structure constants in that
//! frame. Existence is shown by the witness found; a not-found verdict is
//! numerical evidence only.

use nalgebra::{Matrix4, SMatrix, SVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Concrete, LieAlgebra};
use crate::error::{Error, Result};
use crate::form::Metric;
use crate::linalg::PolyMatrix;
use crate::poly::{rational_to_f64, Point};

/// Structure constants: b[i][j][k] is the k-th component of [E_i, E_j].
pub type Brackets = [[[f64; 4]; 4]; 4];

const NRES: usize = 26;
const NPAR: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    pub success_threshold: f64,
    pub failure_floor: f64,
    /// Largest condition number of A before the penalty term switches on.
    pub cond_max: f64,
    pub penalty_weight: f64,
    pub lambda0: f64,
    pub lambda_up: f64,
    pub lambda_down: f64,
    pub fd_step: f64,
    /// Restarts run in parallel batches; the search stops after the first
    /// batch containing a success.
    pub batch: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 100,
            max_iters: 200,
            seed: 0,
            success_threshold: 1e-12,
            failure_floor: 1e-10,
            cond_max: 1e2,
            penalty_weight: 1.0,
            lambda0: 1e-3,
            lambda_up: 10.0,
            lambda_down: 0.3,
            fd_step: 1e-7,
            batch: 8,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Inadmissible("restarts >= 1".into()));
        }
        if !(self.success_threshold < self.failure_floor) {
            return Err(Error::Inadmissible("success_threshold < failure_floor".into()));
        }
        if self.batch == 0 || self.cond_max <= 1.0 {
            return Err(Error::Inadmissible("batch >= 1, cond_max > 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Found,
    NotFound,
    /// Best residual between the two thresholds.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Found => "found",
            Verdict::NotFound => "not-found",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestartTrace {
    pub index: usize,
    pub residual: f64,
    pub iters: usize,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub verdict: Verdict,
    pub best_residual: f64,
    pub best_restart: usize,
    pub a: Matrix4<f64>,
    pub j: Matrix4<f64>,
    pub g: Matrix4<f64>,
    pub trace: Vec<RestartTrace>,
}

fn mat_json(m: &Matrix4<f64>) -> Value {
    json!((0..4).map(|r| (0..4).map(|c| m[(r, c)]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

impl SearchResult {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict.as_str(),
            "evidence": if self.verdict == Verdict::Found { "witness" } else { "numerical, not a proof" },
            "best_residual": self.best_residual,
            "best_restart": self.best_restart,
            "J": mat_json(&self.j),
            "g": mat_json(&self.g),
            "restarts": self.trace.iter().map(|t| json!({
                "index": t.index, "residual": t.residual, "iters": t.iters
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn j0() -> Matrix4<f64> {
    let mut j = Matrix4::zeros();
    j[(1, 0)] = 1.0;
    j[(0, 1)] = -1.0;
    j[(3, 2)] = 1.0;
    j[(2, 3)] = -1.0;
    j
}

/// The pair (J, g) induced by A.
pub fn induced_pair(a: &Matrix4<f64>) -> Option<(Matrix4<f64>, Matrix4<f64>)> {
    let ai = a.try_inverse()?;
    Some((a * j0() * ai, ai.transpose() * ai))
}

/// A g-orthonormal frame (f1, Jf1, f3, Jf3) for a compatible pair, as the
/// columns of A, so that induced_pair(A) = (J, g).
pub fn adapted_frame(j: &Matrix4<f64>, g: &Matrix4<f64>) -> Option<Matrix4<f64>> {
    let ip = |x: &SVector<f64, 4>, y: &SVector<f64, 4>| (x.transpose() * g * y)[(0, 0)];
    let mut cols: Vec<SVector<f64, 4>> = Vec::new();
    for seed in 0..4 {
        if cols.len() == 4 {
            break;
        }
        let mut x = SVector::<f64, 4>::zeros();
        x[seed] = 1.0;
        for c in &cols {
            x -= c * ip(c, &x);
        }
        let n = ip(&x, &x);
        if n < 1e-12 {
            continue;
        }
        let x = x / n.sqrt();
        let jx = j * x;
        cols.push(x);
        cols.push(jx);
    }
    (cols.len() == 4).then(|| Matrix4::from_columns(&cols))
}

pub fn numeric_brackets(alg: &LieAlgebra, point: &Point) -> Result<Brackets> {
    if alg.dim() != 4 {
        return Err(Error::Inadmissible("search needs a 4-dimensional algebra".into()));
    }
    let a = alg.evaluate(point);
    if !a.jacobi_check().is_empty() {
        return Err(Error::Unrecognized("Jacobi identity fails".into()));
    }
    let c = Concrete::new(&a, &Point::new())?;
    let mut b = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut x = vec![num_traits::Zero::zero(); 4];
            let mut y = x.clone();
            x[i] = crate::poly::int(1);
            y[j] = crate::poly::int(1);
            for (k, v) in c.bracket(&x, &y).iter().enumerate() {
                b[i][j][k] = rational_to_f64(v);
            }
        }
    }
    Ok(b)
}

/// Structure constants in the frame given by the columns of A.
pub fn transform(b: &Brackets, a: &Matrix4<f64>, ai: &Matrix4<f64>) -> Brackets {
    let mut out = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            let mut v = [0.0; 4];
            for p in 0..4 {
                for q in 0..4 {
                    let w = a[(p, i)] * a[(q, j)];
                    if w != 0.0 {
                        for k in 0..4 {
                            v[k] += w * b[p][q][k];
                        }
                    }
                }
            }
            for k in 0..4 {
                let s: f64 = (0..4).map(|m| ai[(k, m)] * v[m]).sum();
                out[i][j][k] = s;
                out[j][i][k] = -s;
            }
        }
    }
    out
}

fn br(b: &Brackets, x: &[f64; 4], y: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for i in 0..4 {
        for j in 0..4 {
            let w = x[i] * y[j];
            if w != 0.0 {
                for k in 0..4 {
                    out[k] += w * b[i][j][k];
                }
            }
        }
    }
    out
}

fn jv(x: &[f64; 4]) -> [f64; 4] {
    [-x[1], x[0], -x[3], x[2]]
}

fn unit(i: usize) -> [f64; 4] {
    let mut e = [0.0; 4];
    e[i] = 1.0;
    e
}

/// Raw terms for the standard pair (J0, identity): the Nijenhuis tensor on
/// basis pairs, dc(E1..E4) for c = -J dω, and the norm of the brackets.
pub fn raw_terms(b: &Brackets) -> (Vec<f64>, f64, f64) {
    let mut nij = Vec::with_capacity(24);
    for i in 0..4 {
        for j in (i + 1)..4 {
            let (x, y) = (unit(i), unit(j));
            let (jx, jy) = (jv(&x), jv(&y));
            let t1 = br(b, &jx, &jy);
            let t2 = jv(&br(b, &jx, &y));
            let t3 = jv(&br(b, &x, &jy));
            let t4 = br(b, &x, &y);
            for k in 0..4 {
                nij.push(t1[k] - t2[k] - t3[k] - t4[k]);
            }
        }
    }
    // ω(X, Y) = g(JX, Y) = e12 + e34.
    let omega = |x: &[f64; 4], y: &[f64; 4]| x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
    let domega = |x: &[f64; 4], y: &[f64; 4], z: &[f64; 4]| {
        -omega(&br(b, x, y), z) + omega(&br(b, x, z), y) - omega(&br(b, y, z), x)
    };
    // c(X, Y, Z) = dω(JX, JY, JZ), trilinear: tabulate on the basis.
    let mut c = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                c[i][j][k] = domega(&jv(&unit(i)), &jv(&unit(j)), &jv(&unit(k)));
            }
        }
    }
    let c_at = |x: &[f64; 4], y: &[f64; 4], z: &[f64; 4]| {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    s += x[i] * y[j] * z[k] * c[i][j][k];
                }
            }
        }
        s
    };
    let mut dc = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let rest: Vec<usize> = (0..4).filter(|&m| m != i && m != j).collect();
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            dc += sign * c_at(&b[i][j], &unit(rest[0]), &unit(rest[1]));
        }
    }
    let norm = (0..4)
        .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
        .map(|(i, j)| b[i][j].iter().map(|v| v * v).sum::<f64>())
        .sum::<f64>()
        .sqrt();
    (nij, dc, norm)
}

fn condition(a: &Matrix4<f64>) -> f64 {
    let s = a.singular_values();
    let (mx, mn) = (s.max(), s.min());
    if mn <= 0.0 {
        f64::INFINITY
    } else {
        mx / mn
    }
}

/// Scale-invariant residual vector: Nijenhuis terms over |b|, dc over
/// |b|², and the conditioning penalty.
fn residual_vector(b: &Brackets, a: &Matrix4<f64>, cfg: &SearchConfig) -> Option<SVector<f64, NRES>> {
    let ai = a.try_inverse()?;
    let t = transform(b, a, &ai);
    let (nij, dc, norm) = raw_terms(&t);
    let mut r = SVector::<f64, NRES>::zeros();
    if norm > 0.0 {
        for (k, v) in nij.iter().enumerate() {
            r[k] = v / norm;
        }
        r[24] = dc / (norm * norm);
    }
    let cond = condition(a);
    if !cond.is_finite() {
        return None;
    }
    r[25] = cfg.penalty_weight * (cond / cfg.cond_max).ln().max(0.0);
    Some(r)
}

/// Sum of squared residual terms at A (infinite when A is singular).
pub fn residual(b: &Brackets, a: &Matrix4<f64>, cfg: &SearchConfig) -> f64 {
    residual_vector(b, a, cfg).map(|r| r.norm_squared()).unwrap_or(f64::INFINITY)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of restart i: splitmix64(seed ^ splitmix64(i)).
pub fn restart_seed(seed: u64, i: usize) -> u64 {
    splitmix64(seed ^ splitmix64(i as u64))
}

fn normalize(a: &Matrix4<f64>) -> Matrix4<f64> {
    a * (2.0 / a.norm())
}

fn initial(rng: &mut ChaCha8Rng, cfg: &SearchConfig) -> Matrix4<f64> {
    loop {
        let a = Matrix4::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        if condition(&a) < cfg.cond_max / 2.0 {
            return normalize(&a);
        }
    }
}

fn flat(a: &Matrix4<f64>) -> SVector<f64, NPAR> {
    SVector::from_iterator(a.iter().copied())
}

fn unflat(x: &SVector<f64, NPAR>) -> Matrix4<f64> {
    Matrix4::from_iterator(x.iter().copied())
}

/// One Levenberg–Marquardt run from A.
pub fn minimize(b: &Brackets, a0: Matrix4<f64>, cfg: &SearchConfig) -> (Matrix4<f64>, f64, usize) {
    let mut x = flat(&a0);
    let mut r = match residual_vector(b, &a0, cfg) {
        Some(r) => r,
        None => return (a0, f64::INFINITY, 0),
    };
    let mut f = r.norm_squared();
    let mut lambda = cfg.lambda0;
    let floor = cfg.success_threshold * 1e-16;
    let mut iters = 0;
    while iters < cfg.max_iters && f > floor && lambda < 1e12 {
        iters += 1;
        let mut jac = SMatrix::<f64, NRES, NPAR>::zeros();
        let mut ok = true;
        for p in 0..NPAR {
            let h = cfg.fd_step * x[p].abs().max(1.0);
            let (mut xp, mut xm) = (x, x);
            xp[p] += h;
            xm[p] -= h;
            match (residual_vector(b, &unflat(&xp), cfg), residual_vector(b, &unflat(&xm), cfg)) {
                (Some(rp), Some(rm)) => jac.set_column(p, &((rp - rm) / (2.0 * h))),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            break;
        }
        let jtj = jac.transpose() * jac;
        let g = jac.transpose() * r;
        let mut accepted = false;
        while lambda < 1e12 {
            let mut m = jtj;
            for d in 0..NPAR {
                m[(d, d)] += lambda * (1.0 + jtj[(d, d)]);
            }
            let step = match m.cholesky() {
                Some(ch) => ch.solve(&(-g)),
                None => {
                    lambda *= cfg.lambda_up;
                    continue;
                }
            };
            let xn = flat(&normalize(&unflat(&(x + step))));
            if let Some(rn) = residual_vector(b, &unflat(&xn), cfg) {
                let fnew = rn.norm_squared();
                if fnew < f {
                    x = xn;
                    r = rn;
                    f = fnew;
                    lambda = (lambda * cfg.lambda_down).max(1e-15);
                    accepted = true;
                    break;
                }
            }
            lambda *= cfg.lambda_up;
        }
        if !accepted {
            break;
        }
    }
    (unflat(&x), f, iters)
}

pub fn search_brackets(b: &Brackets, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let mut trace: Vec<(RestartTrace, Matrix4<f64>)> = Vec::new();
    let mut start = 0;
    while start < cfg.restarts {
        let end = (start + cfg.batch).min(cfg.restarts);
        let batch: Vec<(RestartTrace, Matrix4<f64>)> = (start..end)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(cfg.seed, i));
                let a0 = initial(&mut rng, cfg);
                let (a, f, iters) = minimize(b, a0, cfg);
                (RestartTrace { index: i, residual: f, iters }, a)
            })
            .collect();
        let hit = batch.iter().any(|(t, _)| t.residual < cfg.success_threshold);
        trace.extend(batch);
        start = end;
        if hit {
            break;
        }
    }
    let (best, a) = trace
        .iter()
        .min_by(|x, y| x.0.residual.total_cmp(&y.0.residual).then(x.0.index.cmp(&y.0.index)))
        .cloned()
        .expect("at least one restart");
    let (j, g) = induced_pair(&a).expect("invertible");
    let verdict = if best.residual < cfg.success_threshold {
        Verdict::Found
    } else if best.residual > cfg.failure_floor {
        Verdict::NotFound
    } else {
        Verdict::Inconclusive
    };
    Ok(SearchResult {
        verdict,
        best_residual: best.residual,
        best_restart: best.index,
        a,
        j,
        g,
        trace: trace.into_iter().map(|(t, _)| t).collect(),
    })
}

pub fn search_skt(alg: &LieAlgebra, point: &Point, cfg: &SearchConfig) -> Result<SearchResult> {
    search_brackets(&numeric_brackets(alg, point)?, cfg)
}

/// A rational (J, g) pair as floating-point matrices.
pub fn pair_to_f64(j: &PolyMatrix, g: &Metric) -> Result<(Matrix4<f64>, Matrix4<f64>)> {
    let cv = |p: &crate::poly::ScalarPoly| {
        p.as_constant()
            .map(|q| rational_to_f64(&q))
            .ok_or_else(|| Error::Parametric { what: "pair".into() })
    };
    let mut jm = Matrix4::zeros();
    let mut gm = Matrix4::zeros();
    for r in 0..4 {
        for c in 0..4 {
            jm[(r, c)] = cv(&j[r][c])?;
            gm[(r, c)] = cv(g.entry(r, c))?;
        }
    }
    Ok((jm, gm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn brackets(s: &str) -> Brackets {
        numeric_brackets(&parse(s).unwrap(), &Point::new()).unwrap()
    }

    #[test]
    fn abelian_is_zero() {
        let b = brackets("(0,0,0,0)");
        assert_eq!(residual(&b, &Matrix4::identity(), &SearchConfig::default()), 0.0);
    }

    #[test]
    fn parametrization_is_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = SearchConfig::default();
        for _ in 0..50 {
            let a = initial(&mut rng, &cfg);
            let (j, g) = induced_pair(&a).unwrap();
            // Relative to the size of the entries involved.
            assert!((j * j + Matrix4::identity()).norm() < 1e-12 * j.norm_squared());
            assert!((j.transpose() * g * j - g).norm() < 1e-12 * j.norm_squared() * g.norm());
            let back = adapted_frame(&j, &g).unwrap();
            let (j2, g2) = induced_pair(&back).unwrap();
            assert!((j2 - j).norm() < 1e-9 * j.norm() && (g2 - g).norm() < 1e-9 * g.norm());
        }
    }

    fn frame_of(h: &crate::hermitian::HermitianStructure) -> Matrix4<f64> {
        let (j, g) = pair_to_f64(h.j(), h.metric()).unwrap();
        adapted_frame(&j, &g).unwrap()
    }

    #[test]
    fn catalog_witnesses_have_zero_residual() {
        use crate::catalog::families::{build_family, sample_points, ALL_FAMILIES};
        let cfg = SearchConfig::default();
        for f in ALL_FAMILIES {
            for p in sample_points(f, 5, 3) {
                let inst = build_family(f, &p).unwrap();
                let b = numeric_brackets(inst.h.alg(), &Point::new()).unwrap();
                let a = frame_of(&inst.h);
                // The penalty is off for these well-conditioned frames.
                assert!(residual(&b, &a, &cfg) <= 1e-20, "{f}");
            }
        }
    }

    #[test]
    fn deformed_product_is_bounded_away() {
        let h = crate::hermitian::deformed_product_structure(crate::poly::ScalarPoly::constant(crate::poly::rat(1, 2)));
        let b = numeric_brackets(h.alg(), &Point::new()).unwrap();
        assert!(residual(&b, &frame_of(&h), &SearchConfig::default()) > 1e-4);
        let h0 = crate::hermitian::deformed_product_structure(crate::poly::ScalarPoly::zero());
        assert!(residual(&b, &frame_of(&h0), &SearchConfig::default()) < 1e-24);
    }

    /// dc in the frame of A equals det(A) times the exact dc(E1..E4) of the
    /// induced rational pair.
    #[test]
    fn dc_matches_symbolic() {
        use crate::hermitian::{bismut_torsion, HermitianStructure};
        use crate::poly::{rationalize, ScalarPoly};
        let mut nonzero = 0;
        for (src, a) in [
            ("(0,21,-31,32)", Matrix4::new(1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0)),
            ("(0,21,-31,32)", Matrix4::new(2.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 3.0)),
            ("(0,21+31,31,2.41+32)", Matrix4::new(1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 2.0, 0.0, 1.0, 0.0, 1.0)),
        ] {
            let alg = parse(src).unwrap();
            let (j, g) = induced_pair(&a).unwrap();
            let q = |m: &Matrix4<f64>| -> Vec<Vec<ScalarPoly>> {
                (0..4)
                    .map(|r| (0..4).map(|c| ScalarPoly::constant(rationalize(m[(r, c)], 1000).unwrap())).collect())
                    .collect()
            };
            let h = HermitianStructure::new(alg.clone(), q(&j), Metric::new(q(&g)).unwrap()).unwrap();
            let dc = alg.differential(&bismut_torsion(&h).unwrap()).unwrap();
            let exact = rational_to_f64(&dc.top_coefficient().as_constant().unwrap());
            let b = numeric_brackets(&alg, &Point::new()).unwrap();
            let t = transform(&b, &a, &a.try_inverse().unwrap());
            let (_, num, _) = raw_terms(&t);
            if exact != 0.0 {
                nonzero += 1;
            }
            assert!((num - a.determinant() * exact).abs() < 1e-9 * (1.0 + exact.abs()), "{src}: {num} vs {exact}");
        }
        assert!(nonzero > 0);
    }

    #[test]
    fn seeds_are_distinct() {
        let s: std::collections::BTreeSet<u64> = (0..1000).map(|i| restart_seed(7, i)).collect();
        assert_eq!(s.len(), 1000);
    }
}
