//! Byte-stable JSON output. Regenerate with SKT_FORGE_BLESS=1.

use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_skt-forge"))
        .args(args)
        .env_remove("SKT_FORGE_SEED")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"))
}

fn golden(name: &str, args: &[&str], code: i32) {
    let (got_code, out) = run(args);
    assert_eq!(got_code, code, "{args:?}: {out}");
    let again = run(args).1;
    assert_eq!(out, again, "{args:?} is not deterministic");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("SKT_FORGE_BLESS").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(out, want, "{name}");
}

#[test]
fn classify_r3_minus_one() {
    golden("classify_r3.json", &["classify", "(0,21,-31)", "--json"], 0);
}

#[test]
fn betti_r_times_h3() {
    golden("betti_rxh3.json", &["betti", "(0,0,21)xR", "--json"], 0);
    let (_, text) = run(&["betti", "(0,0,21)xR"]);
    assert!(text.starts_with("(3,4,3,1)"));
}

#[test]
fn parse_product() {
    golden("parse_rxh3.json", &["parse", "(0,0,21)xR", "--json"], 0);
}

#[test]
fn table4_report() {
    golden("table4.json", &["table4", "--json"], 0);
}

#[test]
fn family_member() {
    golden(
        "h3_final.json",
        &["skt-verify", "--family", "h3_final", "--param", "k=1", "--param", "q=0", "--param", "r=1", "--param", "z3=0", "--json"],
        0,
    );
}

#[test]
fn family_sampled() {
    golden(
        "realkernel.json",
        &["skt-verify", "--family", "realKernel_affaff", "--points", "5", "--seed", "3", "--json"],
        0,
    );
}

#[test]
fn compact_torsion() {
    golden("compact_torsion.json", &["compact-torsion", "--json"], 0);
}

#[test]
fn search_d4() {
    golden("search_d4.json", &["search", "(0,21,-31,32)", "--restarts", "8", "--seed", "1", "--json"], 0);
}

#[test]
fn conditions_complex() {
    golden("conditions_complex.json", &["conditions", "--case", "complex", "--compare", "--json"], 0);
}

#[test]
fn seed_from_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_skt-forge"))
        .args(["search", "(0,21,-31,32)", "--restarts", "8", "--json"])
        .env("SKT_FORGE_SEED", "1")
        .output()
        .unwrap();
    let (_, explicit) = run(&["search", "(0,21,-31,32)", "--restarts", "8", "--seed", "1", "--json"]);
    assert_eq!(String::from_utf8(with_env.stdout).unwrap(), explicit);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "(0,21"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    // su(2) is not solvable: a verdict, not a usage error.
    assert_eq!(run(&["classify", "(32,13,21)"]).0, 1);
    assert_eq!(run(&["check", "(0,0,21,31)"]).0, 0);
    assert_eq!(run(&["check", "(0,21,31,32)"]).0, 1);
    // The real-case published SKT list differs from the computed one.
    assert_eq!(run(&["conditions", "--case", "real", "--compare"]).0, 1);
}
