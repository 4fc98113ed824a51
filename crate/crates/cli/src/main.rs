use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use skt_core::catalog::families::{build_family, verify_family, FamilyId, ALL_FAMILIES};
use skt_core::catalog::table4::verify_table4;
use skt_core::cohomology::betti_report;
use skt_core::hermitian::{
    biinvariant_torsion, compact_example, generic_condition_polys, is_integrable, is_kahler,
    is_skt, kahler_list_comparison, lee_coclosed, skt_list_comparison, Case, HermitianStructure,
};
use skt_core::expr::normalize_letter;
use skt_core::identify::identify;
use skt_core::search::{search_skt, SearchConfig, Verdict};
use skt_core::{notation, Error, LieAlgebra, Point, Rational};

#[derive(Parser)]
#[command(name = "skt-forge", version, about = "Exact checks of invariant Hermitian and SKT geometry on small Lie algebras")]
struct Cli {
    /// Print canonical JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, env = "SKT_FORGE_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct AlgArg {
    /// Compact notation such as "(0,0,21)xR", algebra JSON, or @file.
    algebra: String,
    /// Parameter values, e.g. --at lambda=1/2.
    #[arg(long = "at", value_name = "NAME=VALUE")]
    at: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and echo an algebra.
    Parse(AlgArg),
    /// Check the Jacobi identity (d² = 0).
    Check(AlgArg),
    /// Identify a solvable algebra of dimension at most four.
    Classify(AlgArg),
    /// Betti numbers of the Chevalley–Eilenberg complex.
    Betti(AlgArg),
    /// Verify solution families or an explicit Hermitian structure.
    SktVerify {
        /// Family name, e.g. h3_final.
        #[arg(long)]
        family: Option<String>,
        /// Parameter values for a single family member.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Verify every family and the table.
        #[arg(long)]
        all: bool,
        /// Random sample points per family.
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Algebra for an explicit structure.
        algebra: Option<String>,
        /// Hermitian structure as JSON {"J": .., "g": ..} or @file.
        #[arg(long)]
        hermitian: Option<String>,
    },
    /// Generic integrability, Jacobi, SKT and Kähler polynomials.
    Conditions {
        #[arg(long, default_value = "complex")]
        case: String,
        /// Compare with the published condition lists.
        #[arg(long)]
        compare: bool,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Check every row of the table of SKT algebras.
    Table4,
    /// Numerical search for an SKT structure.
    Search {
        #[command(flatten)]
        alg: AlgArg,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-12)]
        threshold: f64,
        #[arg(long, default_value_t = 1e-10)]
        floor: f64,
    },
    /// Torsion of the bi-invariant metric on su(2) + R.
    CompactTorsion,
}

struct Report {
    json: Value,
    text: String,
    ok: bool,
}

fn read_input(s: &str) -> anyhow::Result<String> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(s.to_string()),
    }
}

fn load_algebra(s: &str) -> anyhow::Result<LieAlgebra> {
    let text = read_input(s)?;
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t)?;
        Ok(LieAlgebra::from_json(&v)?)
    } else {
        Ok(notation::parse(t)?)
    }
}

fn parse_point(items: &[String]) -> anyhow::Result<Point> {
    let mut p = Point::new();
    for it in items {
        let (k, v) = it
            .split_once('=')
            .ok_or_else(|| anyhow!("expected NAME=VALUE, got {it}"))?;
        let q: Rational = v.trim().parse().map_err(|_| anyhow!("not a rational: {v}"))?;
        let k = k.trim();
        let mut chars = k.chars();
        let name = match (chars.next(), chars.next()) {
            (Some(c), None) => normalize_letter(c).map(str::to_string).unwrap_or_else(|| k.to_string()),
            _ => k.to_string(),
        };
        p.insert(name, q);
    }
    Ok(p)
}

fn verdict_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Unrecognized(_) | Error::Ambiguous(_) | Error::NotSolvable | Error::NotAdInvariant
    )
}

fn cmd_parse(a: &AlgArg) -> anyhow::Result<Report> {
    let alg = load_algebra(&a.algebra)?.evaluate(&parse_point(&a.at)?);
    let printed = notation::print(&alg).ok();
    Ok(Report {
        text: printed.clone().unwrap_or_else(|| format!("{:?}", alg.to_json())),
        json: json!({"dim": alg.dim(), "notation": printed, "algebra": alg.to_json()}),
        ok: true,
    })
}

fn cmd_check(a: &AlgArg) -> anyhow::Result<Report> {
    let alg = load_algebra(&a.algebra)?.evaluate(&parse_point(&a.at)?);
    let res: Vec<String> = alg.jacobi_check().iter().map(|p| p.to_string()).collect();
    let ok = res.is_empty();
    Ok(Report {
        text: if ok { "d^2 = 0".into() } else { format!("d^2 != 0:\n  {}", res.join("\n  ")) },
        json: json!({"jacobi": ok, "residuals": res}),
        ok,
    })
}

fn cmd_classify(a: &AlgArg) -> anyhow::Result<Report> {
    let alg = load_algebra(&a.algebra)?;
    match identify(&alg, &parse_point(&a.at)?) {
        Ok(id) => Ok(Report { text: id.to_string(), json: id.to_json(), ok: true }),
        Err(e) if verdict_error(&e) => Ok(Report {
            text: e.to_string(),
            json: json!({"error": e.to_string()}),
            ok: false,
        }),
        Err(e) => Err(e.into()),
    }
}

fn cmd_betti(a: &AlgArg) -> anyhow::Result<Report> {
    let alg = load_algebra(&a.algebra)?;
    let v = betti_report(&alg, &parse_point(&a.at)?)?;
    let b: Vec<String> = v["betti"]
        .as_array()
        .map(|x| x.iter().skip(1).map(|n| n.to_string()).collect())
        .unwrap_or_default();
    let uni = v["unimodular"].as_bool().unwrap_or(false);
    Ok(Report {
        text: format!("({}){}", b.join(","), if uni { " unimodular" } else { "" }),
        json: v,
        ok: true,
    })
}

fn family_text(r: &Value) -> String {
    let mut s = format!("{:<20}", r["family"].as_str().unwrap_or(""));
    for k in ["jacobi", "integrable", "skt", "conditions", "identified", "kahler_iff"] {
        s.push_str(&format!(" {}={}", k, if r[k].as_bool() == Some(true) { "ok" } else { "FAIL" }));
    }
    if let Some(f) = r["failures"].as_array() {
        for x in f {
            s.push_str(&format!("\n    {}", x.as_str().unwrap_or("")));
        }
    }
    s
}

fn cmd_skt_verify(
    family: &Option<String>,
    params: &[String],
    all: bool,
    points: usize,
    algebra: &Option<String>,
    hermitian: &Option<String>,
    seed: u64,
) -> anyhow::Result<Report> {
    if all {
        let reports: Vec<_> = ALL_FAMILIES.par_iter().map(|&f| verify_family(f, points, seed)).collect();
        let t4 = verify_table4();
        let ok = reports.iter().all(|r| r.passes()) && t4.passes();
        let fam: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
        let mut text: Vec<String> = fam.iter().map(family_text).collect();
        text.push(format!("table4: {}", if t4.passes() { "ok" } else { "FAIL" }));
        return Ok(Report {
            json: json!({"seed": seed, "points": points, "families": fam, "table4": {"pass": t4.passes()}}),
            text: text.join("\n"),
            ok,
        });
    }
    if let Some(name) = family {
        let id = FamilyId::parse(name)?;
        if params.is_empty() {
            let r = verify_family(id, points, seed);
            let mut j = r.to_json();
            j["seed"] = json!(seed);
            return Ok(Report { text: family_text(&j), json: j, ok: r.passes() });
        }
        let p = parse_point(params)?;
        let inst = build_family(id, &p)?;
        let got = identify(inst.h.alg(), &Point::new());
        let skt = is_skt(&inst.h)?.holds;
        let kahler = is_kahler(&inst.h)?.holds;
        let lee = lee_coclosed(&inst.h, &Point::new())?;
        let identified = got.as_ref().ok() == Some(&inst.claimed_id);
        let ok = skt && identified && kahler == inst.claimed_kahler && lee == skt;
        let got_s = match &got {
            Ok(g) => g.to_string(),
            Err(e) => e.to_string(),
        };
        return Ok(Report {
            text: format!(
                "{id}: on {got_s} (claimed {}), skt={skt}, kahler={kahler} (predicate {}), lee co-closed={lee}",
                inst.claimed_id, inst.claimed_kahler
            ),
            json: json!({
                "family": id.as_str(),
                "claimed_id": inst.claimed_id.to_json(),
                "identified_as": got_s,
                "identified": identified,
                "skt": skt,
                "kahler": kahler,
                "claimed_kahler": inst.claimed_kahler,
                "lee_coclosed": lee,
                "structure": inst.h.to_json(),
                "pass": ok,
            }),
            ok,
        });
    }
    match (algebra, hermitian) {
        (Some(a), Some(h)) => {
            let alg = load_algebra(a)?;
            let hv: Value = serde_json::from_str(read_input(h)?.trim())?;
            let h = HermitianStructure::from_json(alg, &hv)?;
            let integrable = is_integrable(h.alg(), h.j())?;
            let skt = is_skt(&h)?;
            let kahler = is_kahler(&h)?;
            let lee = lee_coclosed(&h, &Point::new()).ok();
            let strs = |v: &[skt_core::ScalarPoly]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
            let ok = integrable && skt.holds;
            Ok(Report {
                text: format!("integrable={integrable} skt={} kahler={} lee_coclosed={lee:?}", skt.holds, kahler.holds),
                json: json!({
                    "integrable": integrable,
                    "skt": skt.holds,
                    "dc": strs(&skt.residual),
                    "kahler": kahler.holds,
                    "domega": strs(&kahler.residual),
                    "lee_coclosed": lee,
                    "pass": ok,
                }),
                ok,
            })
        }
        _ => bail!("give --all, --family NAME, or ALGEBRA --hermitian JSON"),
    }
}

fn cmd_conditions(case: &str, compare: bool, bound: u32) -> anyhow::Result<Report> {
    let case = Case::parse(case)?;
    let g = generic_condition_polys(case);
    let mut j = g.to_json();
    let mut text = Vec::new();
    let list = |name: &str, v: &[skt_core::ScalarPoly], text: &mut Vec<String>| {
        text.push(format!("{name}:"));
        text.extend(v.iter().map(|p| format!("  {p}")));
    };
    list("integrability", &g.integrability, &mut text);
    list("jacobi", &g.jacobi, &mut text);
    list("skt", std::slice::from_ref(&g.skt), &mut text);
    list("kahler", &g.kahler, &mut text);
    let mut ok = true;
    if compare {
        let s = skt_list_comparison(case, bound);
        let k = kahler_list_comparison(case, bound);
        ok = s.passes() && k.passes();
        j["skt_list"] = s.to_json();
        j["kahler_list"] = k.to_json();
        for (name, c) in [("skt list", &s), ("kahler list", &k)] {
            text.push(format!("{name}: {}", if c.passes() { "equivalent" } else { "MISMATCH" }));
            text.extend(c.failures().into_iter().map(|f| format!("  {f}")));
        }
    }
    Ok(Report { json: j, text: text.join("\n"), ok })
}

fn cmd_table4() -> anyhow::Result<Report> {
    let r = verify_table4();
    let text = r
        .rows
        .iter()
        .map(|row| {
            let b = row.betti.first().map(|b| format!("{b:?}")).unwrap_or_default();
            let mut s = format!(
                "{:<22} betti {:<14} kahler {:<5} {}",
                row.label,
                b,
                row.kahler_found,
                if row.passes() { "ok" } else { "FAIL" }
            );
            for f in &row.failures {
                s.push_str(&format!("\n    {f}"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report { json: r.to_json(), text, ok: r.passes() })
}

fn cmd_search(a: &AlgArg, restarts: usize, max_iters: usize, threshold: f64, floor: f64, seed: u64) -> anyhow::Result<Report> {
    let alg = load_algebra(&a.algebra)?;
    let cfg = SearchConfig {
        restarts,
        max_iters,
        seed,
        success_threshold: threshold,
        failure_floor: floor,
        ..SearchConfig::default()
    };
    let r = search_skt(&alg, &parse_point(&a.at)?, &cfg)?;
    let mut j = r.to_json();
    j["seed"] = json!(seed);
    let note = match r.verdict {
        Verdict::Found => "witness found",
        _ => "numerical evidence only",
    };
    Ok(Report {
        text: format!(
            "{} (best residual {:.3e} at restart {}, {} restarts; {note}; seed {seed})",
            r.verdict.as_str(),
            r.best_residual,
            r.best_restart,
            r.trace.len()
        ),
        json: j,
        ok: r.verdict != Verdict::Inconclusive,
    })
}

fn cmd_compact_torsion() -> anyhow::Result<Report> {
    let (alg, g) = compact_example();
    let t = biinvariant_torsion(&alg, &g)?;
    let c = t.c.to_string();
    let ok = t.closed && !t.c.is_zero();
    let diag: Vec<String> = (0..4).map(|i| g.entry(i, i).to_string()).collect();
    Ok(Report {
        text: format!("su(2) + R, g = diag({}): c = {c}, dc = 0: {}", diag.join(","), t.closed),
        json: json!({"algebra": "su2_x_R", "metric_diagonal": diag, "c": c, "closed": t.closed, "pass": ok}),
        ok,
    })
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.cmd {
        Cmd::Parse(a) => cmd_parse(a),
        Cmd::Check(a) => cmd_check(a),
        Cmd::Classify(a) => cmd_classify(a),
        Cmd::Betti(a) => cmd_betti(a),
        Cmd::SktVerify { family, params, all, points, algebra, hermitian } => {
            cmd_skt_verify(family, params, *all, *points, algebra, hermitian, cli.seed)
        }
        Cmd::Conditions { case, compare, bound } => cmd_conditions(case, *compare, *bound),
        Cmd::Table4 => cmd_table4(),
        Cmd::Search { alg, restarts, max_iters, threshold, floor } => {
            cmd_search(alg, *restarts, *max_iters, *threshold, *floor, cli.seed)
        }
        Cmd::CompactTorsion => cmd_compact_torsion(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else {
                println!("{}", r.text);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("skt-forge: {e:#}");
            ExitCode::from(2)
        }
    }
}
