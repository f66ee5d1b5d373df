//! WebAssembly bindings for the browser demo in `www/`. Each export takes
//! the text of an input box and returns a JSON string; errors come back as
//! thrown JS errors carrying the message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use twobridge::contfrac::{even_cf, parse_fraction, parse_int};
use twobridge::diagram::mu;
use twobridge::goeritz::{closed_form_diagonal, goeritz_matrix};
use twobridge::signature::{goeritz_signature, oracle_any, signature_from_cf, signature_from_pq, validate_fraction};
use twobridge::{ContinuedFraction, Int, Matrix, SignatureReport};

/// Above this `|p|` the demo skips the O(p) remainder count.
const ORACLE_LIMIT: i64 = 5_000_000;

enum Input {
    Fraction(Int, Int),
    Cf(ContinuedFraction),
}

/// `p/q`, a bare integer, or a bracketed / comma-separated coefficient list.
fn parse_input(text: &str) -> Result<Input, String> {
    let t = text.trim();
    if t.contains('/') {
        let (p, q) = parse_fraction(t).map_err(|e| e.to_string())?;
        Ok(Input::Fraction(p, q))
    } else if t.starts_with('[') || t.contains(',') {
        t.parse().map(Input::Cf).map_err(|e: twobridge::Error| e.to_string())
    } else {
        Ok(Input::Fraction(parse_int(t).map_err(|e| e.to_string())?, Int::from(1)))
    }
}

fn matrix<T: std::fmt::Display>(m: &Matrix<T>) -> Value {
    m.rows().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect()
}

fn report_json(r: &SignatureReport, oracle: Option<Int>) -> Value {
    json!({
        "cf": r.cf.to_string(),
        "sigmaG": r.sigma_g.to_string(),
        "mu": r.mu.to_string(),
        "sigma": r.sigma.to_string(),
        "det": r.determinant.to_string(),
        "method": r.method.to_string(),
        "oracle": oracle.map(|o| o.to_string()),
    })
}

/// Signature of the input knot, plus the oracle value when it is cheap.
pub fn signature_report(text: &str) -> Result<String, String> {
    let (report, pq) = match parse_input(text)? {
        Input::Fraction(p, q) => {
            let r = signature_from_pq(&p, &q).map_err(|e| e.to_string())?;
            (r, Some((p, q)))
        }
        Input::Cf(cf) => {
            let r = signature_from_cf(&cf).map_err(|e| e.to_string())?;
            let (p, q) = r.cf.convergents().last().clone();
            let pq = if q == Int::from(0) { None } else { Some((p, q)) };
            (r, pq)
        }
    };
    let oracle = match pq {
        Some((p, q)) if p.magnitude() <= &ORACLE_LIMIT.unsigned_abs().into() => oracle_any(&p, &q).ok(),
        _ => None,
    };
    Ok(report_json(&report, oracle).to_string())
}

/// Even expansion of a fraction with its division trace.
pub fn even_expansion(text: &str) -> Result<String, String> {
    let (p, q) = match parse_input(text)? {
        Input::Fraction(p, q) => (p, q),
        Input::Cf(_) => return Err("expected a fraction p/q".into()),
    };
    let (p, q) = validate_fraction(&p, &q).map_err(|e| e.to_string())?;
    let (cf, trace) = even_cf(&p, &q).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = std::iter::once(&trace.first)
        .chain(&trace.rows)
        .map(|r| json!([r.step.to_string(), r.coefficient.to_string(), r.sign.to_string(), r.remainder.to_string()]))
        .collect();
    Ok(json!({
        "fraction": format!("{p}/{q}"),
        "cf": cf.to_string(),
        "completion": trace.completion.to_string(),
        "target": format!("{}/{}", trace.target.0, trace.target.1),
        "rows": rows,
    })
    .to_string())
}

/// Goeritz matrix, its closed-form diagonal and the per-region correction
/// term for a coefficient list (or the nearest-integer expansion of a
/// fraction).
pub fn breakdown(text: &str) -> Result<String, String> {
    let cf = match parse_input(text)? {
        Input::Cf(cf) => cf,
        Input::Fraction(p, q) => {
            let (p, q) = validate_fraction(&p, &q).map_err(|e| e.to_string())?;
            ContinuedFraction::nearest_integer_expansion(&p, &q).map_err(|e| e.to_string())?
        }
    }
    .normalize_odd_length();
    let g = goeritz_matrix(&cf).map_err(|e| e.to_string())?;
    let (sigma_g, fallback) = goeritz_signature(&cf).map_err(|e| e.to_string())?;
    let diagonal =
        closed_form_diagonal(&cf).ok().map(|d| d.entries.iter().map(ToString::to_string).collect::<Vec<_>>());
    let m = mu(&cf).map_err(|e| e.to_string())?;
    let regions: Vec<Value> = m
        .contributions
        .iter()
        .map(|r| {
            json!({
                "position": r.position,
                "c": r.coefficient.to_string(),
                "eta": r.eta,
                "type": r.tau.to_string(),
                "strands": r.strands.to_string(),
                "contribution": r.contribution.to_string(),
            })
        })
        .collect();
    Ok(json!({
        "cf": cf.to_string(),
        "basis": g.basis.labels().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "matrix": matrix(&g.matrix),
        "det": g.determinant().to_string(),
        "diagonal": diagonal,
        "congruenceFallback": fallback,
        "sigmaG": sigma_g.to_string(),
        "mu": m.total.to_string(),
        "sigma": (&sigma_g - &m.total).to_string(),
        "regions": regions,
    })
    .to_string())
}

#[wasm_bindgen(js_name = signature)]
pub fn signature_js(text: &str) -> Result<String, JsError> {
    signature_report(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = evenExpansion)]
pub fn even_expansion_js(text: &str) -> Result<String, JsError> {
    even_expansion(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = breakdown)]
pub fn breakdown_js(text: &str) -> Result<String, JsError> {
    breakdown(text).map_err(|e| JsError::new(&e))
}
