//! JSON-in, JSON-out bindings for the browser demo in `www/`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use skt_core::catalog::families::{build_family, FamilyId};
use skt_core::cohomology::betti_report;
use skt_core::hermitian::{is_kahler, is_skt, lee_coclosed};
use skt_core::identify::identify;
use skt_core::{notation, Point, Rational};

fn err(e: impl std::fmt::Display) -> String {
    json!({"error": e.to_string()}).to_string()
}

/// "lambda=1/2, t=0" or a JSON object {"lambda": "1/2"}.
fn point(s: &str) -> Result<Point, String> {
    let s = s.trim();
    let mut p = Point::new();
    if s.is_empty() {
        return Ok(p);
    }
    if s.starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| e.to_string())?;
        for (k, x) in v.as_object().ok_or("expected an object")? {
            let t = match x {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            p.insert(k.clone(), t.parse::<Rational>().map_err(|_| format!("not a rational: {t}"))?);
        }
        return Ok(p);
    }
    for item in s.split(',') {
        let (k, v) = item.split_once('=').ok_or_else(|| format!("expected name=value: {item}"))?;
        let q = v.trim().parse::<Rational>().map_err(|_| format!("not a rational: {v}"))?;
        p.insert(k.trim().to_string(), q);
    }
    Ok(p)
}

/// Identify an algebra in compact notation.
#[wasm_bindgen]
pub fn classify(notation_text: &str, params: &str) -> String {
    let run = || -> Result<Value, String> {
        let alg = notation::parse(notation_text).map_err(|e| e.to_string())?;
        let id = identify(&alg, &point(params)?).map_err(|e| e.to_string())?;
        let mut v = id.to_json();
        v["name"] = json!(id.to_string());
        Ok(v)
    };
    run().map(|v| v.to_string()).unwrap_or_else(err)
}

/// Betti numbers and unimodularity.
#[wasm_bindgen]
pub fn betti(notation_text: &str, params: &str) -> String {
    let run = || -> Result<Value, String> {
        let alg = notation::parse(notation_text).map_err(|e| e.to_string())?;
        betti_report(&alg, &point(params)?).map_err(|e| e.to_string())
    };
    run().map(|v| v.to_string()).unwrap_or_else(err)
}

/// One member of a solution family: where it lives and whether it is SKT
/// and Kähler.
#[wasm_bindgen]
pub fn family_member(family: &str, params: &str) -> String {
    let run = || -> Result<Value, String> {
        let id = FamilyId::parse(family).map_err(|e| e.to_string())?;
        let inst = build_family(id, &point(params)?).map_err(|e| e.to_string())?;
        let on = identify(inst.h.alg(), &Point::new()).map_err(|e| e.to_string())?;
        let skt = is_skt(&inst.h).map_err(|e| e.to_string())?.holds;
        let kahler = is_kahler(&inst.h).map_err(|e| e.to_string())?.holds;
        let lee = lee_coclosed(&inst.h, &Point::new()).map_err(|e| e.to_string())?;
        Ok(json!({
            "family": id.as_str(),
            "algebra": on.to_string(),
            "notation": notation::print(inst.h.alg()).ok(),
            "claimed": inst.claimed_id.to_string(),
            "skt": skt,
            "kahler": kahler,
            "kahler_predicate": inst.claimed_kahler,
            "lee_coclosed": lee,
        }))
    };
    run().map(|v| v.to_string()).unwrap_or_else(err)
}

/// Family names and their parameters, for the page's selector.
#[wasm_bindgen]
pub fn families() -> String {
    let v: Vec<Value> = skt_core::catalog::families::ALL_FAMILIES
        .iter()
        .map(|f| json!({"name": f.as_str(), "params": f.params()}))
        .collect();
    Value::from(v).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn classify_round_trip() {
        let v = parse(&classify("(0,21,-31)", ""));
        assert_eq!(v["id"], "r3_lambda");
        assert_eq!(v["lambda"], "-1");
        let v = parse(&classify("(0,21,λ31)", "lambda=1/2"));
        assert_eq!(v["lambda"], "1/2");
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(parse(&betti("(0,0,21)xR", ""))["betti"], json!([1, 3, 4, 3, 1]));
    }

    #[test]
    fn family() {
        let v = parse(&family_member("h3_final", r#"{"k": "1", "q": "0", "r": "1", "z3": "0"}"#));
        assert_eq!(v["algebra"], "d4_lambda(lambda=1/2)");
        assert_eq!(v["skt"], true);
        assert_eq!(v["kahler"], true);
        let v = parse(&family_member("oneDim_nilpotent", "u1=0"));
        assert!(v["error"].as_str().unwrap().contains("u1"));
    }

    #[test]
    fn errors_are_json() {
        assert!(parse(&classify("(0,21", ""))["error"].is_string());
        assert_eq!(parse(&families()).as_array().unwrap().len(), 12);
    }
}
