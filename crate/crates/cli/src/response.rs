//! Canonical serialization of response documents.
//!
//! The output is a pure function of the computed value: orbit types sorted,
//! monomials in descending graded-lex order, rationals as `p/q` strings in
//! lowest terms (denominator omitted when 1), corner strata listed by
//! ascending subset mask. Integers beyond 64 bits fall back to decimal
//! strings.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use eqtorsion::{CornerChi, EulerElement, IntMatrix, OrbitSpectrum, OrbitType, TorsionSeries};

use crate::diag::Diagnostic;
use crate::exec::Output;

pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn bigint_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

fn biguint_value(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(u) => json!(u),
        None => json!(n.to_string()),
    }
}

fn characters_value(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array(m.row(r).iter().map(bigint_value).collect()))
        .collect();
    Value::Array(rows)
}

pub fn orbit_value(orbit: &OrbitType) -> Value {
    match orbit {
        OrbitType::CircleFull => json!("full"),
        OrbitType::CircleCyclic(n) => json!({ "cyclic": biguint_value(n) }),
        OrbitType::TorusSubgroup(m) => json!({ "characters": characters_value(m) }),
    }
}

pub fn element_value(e: &EulerElement) -> Value {
    Value::Array(
        e.terms()
            .map(|(orbit, coeff)| json!([orbit_value(orbit), rational_string(coeff)]))
            .collect(),
    )
}

fn monomial_string(exps: &[u32], vars: usize) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if vars == 1 {
            "y".to_string()
        } else {
            format!("y{}", i + 1)
        };
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{}^{}", name, e));
        }
    }
    parts.join("*")
}

pub fn series_value(s: &TorsionSeries) -> Value {
    let grades: Vec<Value> = s
        .grades()
        .map(|(k, poly)| {
            let mut terms = Map::new();
            for (m, c) in poly.terms_desc() {
                terms.insert(
                    monomial_string(m.exponents(), s.vars()),
                    json!(rational_string(c)),
                );
            }
            json!({
                "k": k,
                "zeta": 2 * k + 1,
                "pi_pow": -2 * (k as i64),
                "poly": Value::Object(terms),
            })
        })
        .collect();
    json!({
        "vars": s.vars(),
        "truncation": s.truncation(),
        "grades": grades,
    })
}

pub fn corner_value(c: &CornerChi) -> Value {
    let strata: Vec<Value> = c
        .strata()
        .iter()
        .enumerate()
        .map(|(mask, element)| {
            let subset: Vec<Value> = (0..c.pieces())
                .filter(|bit| mask & (1 << bit) != 0)
                .map(|bit| json!(bit + 1))
                .collect();
            json!([Value::Array(subset), element_value(element)])
        })
        .collect();
    json!({ "pieces": c.pieces(), "strata": strata })
}

pub fn spectrum_value(s: &OrbitSpectrum) -> Value {
    Value::Array(
        s.pairs()
            .iter()
            .map(|(n, m)| json!([biguint_value(n), rational_string(m)]))
            .collect(),
    )
}

pub fn ok_response(output: &Output) -> Value {
    let mut root = Map::new();
    root.insert("status".into(), json!("ok"));
    let (result, numeric) = match output {
        Output::Element(e) => (json!({ "element": element_value(e) }), None),
        Output::Series { series, numeric } => (json!({ "series": series_value(series) }), *numeric),
        Output::Corner(c) => (json!({ "corner": corner_value(c) }), None),
        Output::Inversion { spectrum, element } => (
            json!({
                "spectrum": spectrum_value(spectrum),
                "element": element_value(element),
            }),
            None,
        ),
        Output::Value(v) => (json!({ "value": v }), None),
    };
    root.insert("result".into(), result);
    if let Some(v) = numeric {
        root.insert("numeric".into(), json!(v));
    }
    Value::Object(root)
}

pub fn error_response(diags: &[Diagnostic]) -> Value {
    json!({
        "status": "error",
        "diagnostics": diags
            .iter()
            .map(|d| json!({ "code": d.code, "path": d.path, "message": d.message }))
            .collect::<Vec<_>>(),
    })
}

pub fn render(value: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    };
    s.push('\n');
    s
}
