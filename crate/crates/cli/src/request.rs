//! Parsing and validation of request documents.
//!
//! The parser walks the JSON value by hand so that every violated
//! constraint is reported, each with the path of the offending node; it
//! never stops at the first problem. Payload walkers accept an unknown
//! group (when the group field itself failed) and still surface every
//! group-independent violation. A request is only handed to the executor
//! when the diagnostics list stays empty.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{Map, Value};

use eqtorsion::poly::Poly;
use eqtorsion::{CornerChi, EulerElement, GCWComplex, Group, IntMatrix, OrbitType, TorsionSeries};

use crate::diag::Diagnostic;

pub const DEFAULT_TRUNCATION: usize = 8;
pub const MAX_TRUNCATION: usize = 64;
pub const MAX_TORUS_RANK: usize = 8;
pub const MIN_NUMERIC_TOL: f64 = 1e-12;
pub const MAX_NUMERIC_TOL: f64 = 1e-1;

#[derive(Clone, Debug)]
pub struct NumericRequest {
    pub point: Vec<f64>,
    pub zeta_tol: f64,
}

#[derive(Clone, Debug)]
pub enum ChiInput {
    Cells(GCWComplex),
    Corner(CornerChi),
}

#[derive(Clone, Debug)]
pub enum TorsionInput {
    Cells(GCWComplex),
    Element(EulerElement),
    Corner(CornerChi),
}

#[derive(Clone, Debug)]
pub enum Request {
    Chi {
        input: ChiInput,
    },
    Torsion {
        group: Group,
        input: TorsionInput,
        truncation: usize,
        numeric: Option<NumericRequest>,
    },
    RestrictElement {
        element: EulerElement,
        vector: Vec<BigInt>,
    },
    RestrictSeries {
        series: TorsionSeries,
        vector: Vec<BigInt>,
        numeric: Option<NumericRequest>,
    },
    Invert {
        series: TorsionSeries,
        euler_char: BigInt,
    },
    Double {
        corner: CornerChi,
        piece: usize,
    },
    Glue {
        first: CornerChi,
        second: CornerChi,
    },
    Symspace {
        rank: usize,
        covectors: Vec<Vec<BigInt>>,
        truncation: usize,
        numeric: Option<NumericRequest>,
    },
    Eval {
        series: TorsionSeries,
        point: Vec<f64>,
    },
}

/// Parse and validate a request document. `k_override` is the `--K` flag
/// and wins over the document's own `K` field.
pub fn parse_request(bytes: &[u8], k_override: Option<usize>) -> Result<Request, Vec<Diagnostic>> {
    let value: Value = match serde_json::from_slice(bytes) {
        Ok(v) => v,
        Err(e) => {
            return Err(vec![Diagnostic::new(
                "malformed-json",
                "",
                format!("input is not valid UTF-8 JSON: {}", e),
            )])
        }
    };
    let mut diags = Vec::new();
    let request = build_request(&value, k_override, &mut diags);
    match request {
        Some(r) if diags.is_empty() => Ok(r),
        _ => {
            if diags.is_empty() {
                diags.push(Diagnostic::new(
                    "schema",
                    "",
                    "request could not be assembled",
                ));
            }
            Err(diags)
        }
    }
}

fn build_request(
    value: &Value,
    k_override: Option<usize>,
    d: &mut Vec<Diagnostic>,
) -> Option<Request> {
    let obj = as_object(value, "", d)?;

    let command = match obj.get("command") {
        Some(Value::String(s)) => Some(s.as_str()),
        Some(_) => {
            d.push(Diagnostic::new(
                "schema",
                "/command",
                "command must be a string",
            ));
            None
        }
        None => {
            d.push(Diagnostic::new(
                "schema",
                "/command",
                "missing required field",
            ));
            None
        }
    }?;

    let allowed: &[&str] = match command {
        "chi" => &["command", "group", "K", "cells", "corner"],
        "torsion" => &[
            "command", "group", "K", "cells", "element", "corner", "numeric",
        ],
        "restrict" => &[
            "command", "group", "K", "element", "series", "vector", "numeric",
        ],
        "invert" => &["command", "K", "series", "euler_char"],
        "double" => &["command", "group", "corner", "piece"],
        "glue" => &["command", "group", "corners"],
        "symspace" => &["command", "group", "K", "covectors", "numeric"],
        "eval" => &["command", "series", "point"],
        other => {
            d.push(Diagnostic::new(
                "schema",
                "/command",
                format!("unknown command {:?}", other),
            ));
            return None;
        }
    };
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            d.push(Diagnostic::new(
                "schema",
                &format!("/{}", key),
                format!("field not allowed for command {:?}", command),
            ));
        }
    }

    let truncation = parse_truncation(obj, k_override, d);

    match command {
        "chi" => {
            let group = require_group(obj, d);
            let input = match (obj.get("cells"), obj.get("corner")) {
                (Some(cells), None) => parse_cells(cells, group, "/cells", d).map(ChiInput::Cells),
                (None, Some(corner)) => {
                    parse_corner(corner, group, "/corner", d).map(ChiInput::Corner)
                }
                (None, None) => {
                    d.push(Diagnostic::new(
                        "schema",
                        "",
                        "chi needs exactly one of cells or corner",
                    ));
                    None
                }
                (Some(_), Some(_)) => {
                    d.push(Diagnostic::new(
                        "schema",
                        "",
                        "chi takes cells or corner, not both",
                    ));
                    None
                }
            }?;
            Some(Request::Chi { input })
        }
        "torsion" => {
            let group = require_group(obj, d);
            let sources = [
                obj.get("cells").is_some(),
                obj.get("element").is_some(),
                obj.get("corner").is_some(),
            ];
            if sources.iter().filter(|&&s| s).count() != 1 {
                d.push(Diagnostic::new(
                    "schema",
                    "",
                    "torsion needs exactly one of cells, element, or corner",
                ));
                return None;
            }
            let input = if let Some(cells) = obj.get("cells") {
                parse_cells(cells, group, "/cells", d).map(TorsionInput::Cells)
            } else if let Some(element) = obj.get("element") {
                parse_element(element, group, "/element", d).map(TorsionInput::Element)
            } else {
                let corner = obj.get("corner").expect("checked above");
                if group.is_some() && group != Some(Group::Circle) {
                    d.push(Diagnostic::new(
                        "schema",
                        "/corner",
                        "corner torsion is defined over the circle group",
                    ));
                }
                parse_corner(corner, group, "/corner", d)
                    .filter(|_| group == Some(Group::Circle))
                    .map(TorsionInput::Corner)
            };
            let vars = group.map(|g| match g {
                Group::Circle => 1,
                Group::Torus { rank } => rank,
            });
            let numeric = parse_numeric_opt(obj, vars, d);
            Some(Request::Torsion {
                group: group?,
                input: input?,
                truncation: truncation?,
                numeric: numeric?,
            })
        }
        "restrict" => {
            let vector = required(obj, "vector", d).and_then(|v| parse_int_vector(v, "/vector", d));
            match (obj.get("element"), obj.get("series")) {
                (Some(element), None) => {
                    let group = require_group(obj, d);
                    let rank = match group {
                        Some(Group::Torus { rank }) => Some(rank),
                        Some(Group::Circle) => {
                            d.push(Diagnostic::new(
                                "schema",
                                "/group",
                                "element restriction needs a torus group",
                            ));
                            None
                        }
                        None => None,
                    };
                    let element = parse_element(element, group, "/element", d);
                    let vector = vector?;
                    let rank = rank?;
                    if vector.len() != rank {
                        d.push(Diagnostic::new(
                            "dimension",
                            "/vector",
                            format!(
                                "vector length {} must equal torus rank {}",
                                vector.len(),
                                rank
                            ),
                        ));
                        return None;
                    }
                    if !eqtorsion::lattice::is_primitive(&vector) {
                        d.push(Diagnostic::new(
                            "non-primitive-vector",
                            "/vector",
                            "vector not primitive",
                        ));
                        return None;
                    }
                    Some(Request::RestrictElement {
                        element: element?,
                        vector,
                    })
                }
                (None, Some(series)) => {
                    let series = parse_series(series, "/series", d);
                    let numeric = parse_numeric_opt(obj, Some(1), d);
                    let vector = vector?;
                    let series = series?;
                    if vector.len() != series.vars() {
                        d.push(Diagnostic::new(
                            "dimension",
                            "/vector",
                            format!(
                                "vector length {} must equal series vars {}",
                                vector.len(),
                                series.vars()
                            ),
                        ));
                        return None;
                    }
                    Some(Request::RestrictSeries {
                        series,
                        vector,
                        numeric: numeric?,
                    })
                }
                (None, None) => {
                    d.push(Diagnostic::new(
                        "schema",
                        "",
                        "restrict needs exactly one of element or series",
                    ));
                    None
                }
                (Some(_), Some(_)) => {
                    d.push(Diagnostic::new(
                        "schema",
                        "",
                        "restrict takes element or series, not both",
                    ));
                    None
                }
            }
        }
        "invert" => {
            let series = required(obj, "series", d).and_then(|v| parse_series(v, "/series", d));
            let euler_char =
                required(obj, "euler_char", d).and_then(|v| parse_bigint(v, "/euler_char", d));
            let series = series?;
            if series.vars() != 1 {
                d.push(Diagnostic::new(
                    "schema",
                    "/series/vars",
                    "inversion needs a univariate series",
                ));
                return None;
            }
            Some(Request::Invert {
                series,
                euler_char: euler_char?,
            })
        }
        "double" => {
            let group = require_group(obj, d);
            let corner =
                required(obj, "corner", d).and_then(|v| parse_corner(v, group, "/corner", d));
            let piece =
                required(obj, "piece", d).and_then(|v| parse_usize_in(v, 1, u64::MAX, "/piece", d));
            Some(Request::Double {
                corner: corner?,
                piece: piece?,
            })
        }
        "glue" => {
            let group = require_group(obj, d);
            let corners = required(obj, "corners", d).and_then(|v| as_array(v, "/corners", d))?;
            if corners.len() != 2 {
                d.push(Diagnostic::new(
                    "schema",
                    "/corners",
                    format!("expected exactly 2 corner documents, got {}", corners.len()),
                ));
                return None;
            }
            let first = parse_corner(&corners[0], group, "/corners/0", d);
            let second = parse_corner(&corners[1], group, "/corners/1", d);
            Some(Request::Glue {
                first: first?,
                second: second?,
            })
        }
        "symspace" => {
            let group = require_group(obj, d);
            let rank = match group {
                Some(Group::Torus { rank }) => Some(rank),
                Some(Group::Circle) => {
                    d.push(Diagnostic::new(
                        "schema",
                        "/group",
                        "symspace needs a torus group",
                    ));
                    None
                }
                None => None,
            };
            let covectors = required(obj, "covectors", d)
                .and_then(|v| parse_covectors(v, rank, "/covectors", d));
            let numeric = parse_numeric_opt(obj, rank, d);
            Some(Request::Symspace {
                rank: rank?,
                covectors: covectors?,
                truncation: truncation?,
                numeric: numeric?,
            })
        }
        "eval" => {
            let series = required(obj, "series", d).and_then(|v| parse_series(v, "/series", d));
            let point = required(obj, "point", d).and_then(|v| parse_point(v, "/point", d));
            let series = series?;
            let point = point?;
            if point.len() != series.vars() {
                d.push(Diagnostic::new(
                    "dimension",
                    "/point",
                    format!(
                        "point length {} must equal series vars {}",
                        point.len(),
                        series.vars()
                    ),
                ));
                return None;
            }
            Some(Request::Eval { series, point })
        }
        _ => unreachable!("command matched above"),
    }
}

fn parse_truncation(
    obj: &Map<String, Value>,
    k_override: Option<usize>,
    d: &mut Vec<Diagnostic>,
) -> Option<usize> {
    let documented = match obj.get("K") {
        None => Some(DEFAULT_TRUNCATION),
        Some(v) => parse_usize_in(v, 1, MAX_TRUNCATION as u64, "/K", d),
    };
    match k_override {
        Some(k) if (1..=MAX_TRUNCATION).contains(&k) => Some(k),
        Some(k) => {
            d.push(Diagnostic::new(
                "range",
                "",
                format!("--K {} outside 1..={}", k, MAX_TRUNCATION),
            ));
            None
        }
        None => documented,
    }
}

fn required<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<&'a Value> {
    let v = obj.get(key);
    if v.is_none() {
        d.push(Diagnostic::new(
            "schema",
            &format!("/{}", key),
            "missing required field",
        ));
    }
    v
}

fn required_at<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    path: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<&'a Value> {
    let v = obj.get(key);
    if v.is_none() {
        d.push(Diagnostic::new(
            "schema",
            &format!("{}/{}", path, key),
            "missing required field",
        ));
    }
    v
}

fn require_group(obj: &Map<String, Value>, d: &mut Vec<Diagnostic>) -> Option<Group> {
    match obj.get("group") {
        Some(v) => parse_group(v, "/group", d),
        None => {
            d.push(Diagnostic::new(
                "schema",
                "/group",
                "missing required field",
            ));
            None
        }
    }
}

fn as_object<'a>(
    v: &'a Value,
    path: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<&'a Map<String, Value>> {
    match v {
        Value::Object(m) => Some(m),
        _ => {
            d.push(Diagnostic::new("schema", path, "expected a JSON object"));
            None
        }
    }
}

fn as_array<'a>(v: &'a Value, path: &str, d: &mut Vec<Diagnostic>) -> Option<&'a Vec<Value>> {
    match v {
        Value::Array(a) => Some(a),
        _ => {
            d.push(Diagnostic::new("schema", path, "expected a JSON array"));
            None
        }
    }
}

fn parse_usize_in(
    v: &Value,
    lo: u64,
    hi: u64,
    path: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<usize> {
    match v.as_u64() {
        Some(n) if n >= lo && n <= hi => Some(n as usize),
        Some(n) => {
            d.push(Diagnostic::new(
                "range",
                path,
                format!("{} outside {}..={}", n, lo, hi),
            ));
            None
        }
        None => {
            d.push(Diagnostic::new(
                "schema",
                path,
                "expected a nonnegative integer",
            ));
            None
        }
    }
}

/// Integers arrive as JSON numbers or, beyond 64 bits, as decimal strings.
fn parse_bigint(v: &Value, path: &str, d: &mut Vec<Diagnostic>) -> Option<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Some(BigInt::from(u))
            } else {
                d.push(Diagnostic::new("schema", path, "expected an integer"));
                None
            }
        }
        Value::String(s) => match BigInt::from_str(s.trim()) {
            Ok(i) => Some(i),
            Err(_) => {
                d.push(Diagnostic::new(
                    "schema",
                    path,
                    format!("{:?} is not a decimal integer", s),
                ));
                None
            }
        },
        _ => {
            d.push(Diagnostic::new("schema", path, "expected an integer"));
            None
        }
    }
}

/// Rationals are integers or strings `p/q` with positive denominator;
/// plain integer strings are also accepted.
fn parse_rational(v: &Value, path: &str, d: &mut Vec<Diagnostic>) -> Option<BigRational> {
    match v {
        Value::Number(_) => parse_bigint(v, path, d).map(BigRational::from_integer),
        Value::String(s) => {
            let s = s.trim();
            let parts: Vec<&str> = s.split('/').collect();
            let parsed = match parts.as_slice() {
                [num] => BigInt::from_str(num).ok().map(BigRational::from_integer),
                [num, den] => match (BigInt::from_str(num), BigInt::from_str(den)) {
                    (Ok(n), Ok(q)) if q.is_positive() => Some(BigRational::new(n, q)),
                    _ => None,
                },
                _ => None,
            };
            if parsed.is_none() {
                d.push(Diagnostic::new(
                    "schema",
                    path,
                    format!("{:?} is not a rational (integer or \"p/q\" with q > 0)", s),
                ));
            }
            parsed
        }
        _ => {
            d.push(Diagnostic::new(
                "schema",
                path,
                "expected a rational as integer or string",
            ));
            None
        }
    }
}

fn parse_group(v: &Value, path: &str, d: &mut Vec<Diagnostic>) -> Option<Group> {
    let obj = as_object(v, path, d)?;
    if obj.len() != 1 {
        d.push(Diagnostic::new(
            "schema",
            path,
            "group must be {\"circle\":{}} or {\"torus\":{\"rank\":k}}",
        ));
        return None;
    }
    if let Some(c) = obj.get("circle") {
        if !matches!(c, Value::Object(m) if m.is_empty()) {
            d.push(Diagnostic::new(
                "schema",
                &format!("{}/circle", path),
                "circle group carries no parameters; use {}",
            ));
            return None;
        }
        return Some(Group::Circle);
    }
    if let Some(t) = obj.get("torus") {
        let tpath = format!("{}/torus", path);
        let tobj = as_object(t, &tpath, d)?;
        for key in tobj.keys() {
            if key != "rank" {
                d.push(Diagnostic::new(
                    "schema",
                    &format!("{}/{}", tpath, key),
                    "unknown field",
                ));
            }
        }
        let rank = match tobj.get("rank") {
            Some(r) => parse_usize_in(r, 1, MAX_TORUS_RANK as u64, &format!("{}/rank", tpath), d)?,
            None => {
                d.push(Diagnostic::new(
                    "schema",
                    &format!("{}/rank", tpath),
                    "missing required field",
                ));
                return None;
            }
        };
        return Some(Group::Torus { rank });
    }
    d.push(Diagnostic::new(
        "schema",
        path,
        "group must be {\"circle\":{}} or {\"torus\":{\"rank\":k}}",
    ));
    None
}

/// With an unknown group the orbit shape cannot be interpreted; only gross
/// structural errors are reported in that case.
fn parse_orbit(
    v: &Value,
    group: Option<Group>,
    path: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<OrbitType> {
    let Some(group) = group else {
        if !matches!(v, Value::String(_) | Value::Object(_)) {
            d.push(Diagnostic::new("schema", path, "expected an orbit type"));
        }
        return None;
    };
    match group {
        Group::Circle => match v {
            Value::String(s) if s == "full" => Some(OrbitType::CircleFull),
            Value::Object(m) if m.len() == 1 && m.contains_key("cyclic") => {
                let npath = format!("{}/cyclic", path);
                let n = parse_bigint(m.get("cyclic").expect("checked"), &npath, d)?;
                if !n.is_positive() {
                    d.push(Diagnostic::new(
                        "range",
                        &npath,
                        "cyclic order must be >= 1",
                    ));
                    return None;
                }
                Some(OrbitType::CircleCyclic(n.to_biguint().expect("positive")))
            }
            _ => {
                d.push(Diagnostic::new(
                    "schema",
                    path,
                    "circle orbit type must be \"full\" or {\"cyclic\":n}",
                ));
                None
            }
        },
        Group::Torus { rank } => match v {
            Value::Object(m) if m.len() == 1 && m.contains_key("characters") => {
                let cpath = format!("{}/characters", path);
                let rows = as_array(m.get("characters").expect("checked"), &cpath, d)?;
                let mut parsed_rows = Vec::with_capacity(rows.len());
                let mut ok = true;
                for (i, row) in rows.iter().enumerate() {
                    let rpath = format!("{}/{}", cpath, i);
                    match parse_int_vector(row, &rpath, d) {
                        Some(r) if r.len() == rank => parsed_rows.push(r),
                        Some(r) => {
                            d.push(Diagnostic::new(
                                "dimension",
                                &rpath,
                                format!("row length {} must equal torus rank {}", r.len(), rank),
                            ));
                            ok = false;
                        }
                        None => ok = false,
                    }
                }
                if !ok {
                    return None;
                }
                let m = IntMatrix::from_rows(rank, parsed_rows).expect("validated rows");
                Some(OrbitType::torus_subgroup(&m))
            }
            _ => {
                d.push(Diagnostic::new(
                    "schema",
                    path,
                    "torus orbit type must be {\"characters\":[[..]]}",
                ));
                None
            }
        },
    }
}

fn parse_element(
    v: &Value,
    group: Option<Group>,
    path: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<EulerElement> {
    let arr = as_array(v, path, d)?;
    let mut terms = Vec::new();
    let mut ok = group.is_some();
    for (i, pair) in arr.iter().enumerate() {
        let ppath = format!("{}/{}", path, i);
        let Some(pair) = as_array(pair, &ppath, d) else {
            ok = false;
            continue;
        };
        if pair.len() != 2 {
            d.push(Diagnostic::new(
                "schema",
                &ppath,
                "expected an [orbit, coefficient] pair",
            ));
            ok = false;
            continue;
        }
        let orbit = parse_orbit(&pair[0], group, &format!("{}/0", ppath), d);
        let coeff = parse_rational(&pair[1], &format!("{}/1", ppath), d);
        match (orbit, coeff) {
            (Some(o), Some(c)) => terms.push((o, c)),
            _ => ok = false,
        }
    }
    if !ok {
        return None;
    }
    Some(EulerElement::from_terms(group.expect("checked"), terms).expect("orbit groups validated"))
}

fn parse_cells(
    v: &Value,
    group: Option<Group>,
    path: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<GCWComplex> {
    let arr = as_array(v, path, d)?;
    let mut cells = Vec::new();
    let mut ok = group.is_some();
    for (i, cell) in arr.iter().enumerate() {
        let cpath = format!("{}/{}", path, i);
        let Some(cell) = as_array(cell, &cpath, d) else {
            ok = false;
            continue;
        };
        if cell.len() != 2 {
            d.push(Diagnostic::new(
                "schema",
                &cpath,
                "expected a [dimension, orbit] pair",
            ));
            ok = false;
            continue;
        }
        let dim = parse_usize_in(&cell[0], 0, u32::MAX as u64, &format!("{}/0", cpath), d);
        let orbit = parse_orbit(&cell[1], group, &format!("{}/1", cpath), d);
        match (dim, orbit) {
            (Some(dim), Some(orbit)) => cells.push((dim as u32, orbit)),
            _ => ok = false,
        }
    }
    if !ok {
        return None;
    }
    Some(GCWComplex::new(group.expect("checked"), cells).expect("orbit groups validated"))
}

fn parse_int_vector(v: &Value, path: &str, d: &mut Vec<Diagnostic>) -> Option<Vec<BigInt>> {
    let arr = as_array(v, path, d)?;
    let mut out = Vec::with_capacity(arr.len());
    let mut ok = true;
    for (i, x) in arr.iter().enumerate() {
        match parse_bigint(x, &format!("{}/{}", path, i), d) {
            Some(n) => out.push(n),
            None => ok = false,
        }
    }
    if ok {
        Some(out)
    } else {
        None
    }
}

fn parse_covectors(
    v: &Value,
    rank: Option<usize>,
    path: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<Vec<Vec<BigInt>>> {
    let arr = as_array(v, path, d)?;
    let mut out = Vec::with_capacity(arr.len());
    let mut ok = rank.is_some();
    for (i, c) in arr.iter().enumerate() {
        let cpath = format!("{}/{}", path, i);
        match parse_int_vector(c, &cpath, d) {
            Some(c) => {
                if let Some(rank) = rank {
                    if c.len() != rank {
                        d.push(Diagnostic::new(
                            "dimension",
                            &cpath,
                            format!("covector length {} must equal torus rank {}", c.len(), rank),
                        ));
                        ok = false;
                        continue;
                    }
                }
                if c.iter().all(|x| x.is_zero()) {
                    d.push(Diagnostic::new(
                        "schema",
                        &cpath,
                        "covector must be nonzero",
                    ));
                    ok = false;
                    continue;
                }
                out.push(c);
            }
            None => ok = false,
        }
    }
    if ok {
        Some(out)
    } else {
        None
    }
}

fn parse_corner(
    v: &Value,
    group: Option<Group>,
    path: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<CornerChi> {
    let obj = as_object(v, path, d)?;
    for key in obj.keys() {
        if key != "pieces" && key != "strata" {
            d.push(Diagnostic::new(
                "schema",
                &format!("{}/{}", path, key),
                "unknown field",
            ));
        }
    }
    let pieces = required_at(obj, "pieces", path, d)
        .and_then(|v| parse_usize_in(v, 0, 16, &format!("{}/pieces", path), d));
    let strata_val = required_at(obj, "strata", path, d)
        .and_then(|v| as_array(v, &format!("{}/strata", path), d));
    let (pieces, strata_val) = (pieces?, strata_val?);

    let total = 1usize << pieces;
    let mut by_mask: Vec<Option<EulerElement>> = vec![None; total];
    let mut ok = group.is_some();
    for (i, entry) in strata_val.iter().enumerate() {
        let epath = format!("{}/strata/{}", path, i);
        let Some(entry) = as_array(entry, &epath, d) else {
            ok = false;
            continue;
        };
        if entry.len() != 2 {
            d.push(Diagnostic::new(
                "schema",
                &epath,
                "expected a [subset, element] pair",
            ));
            ok = false;
            continue;
        }
        let spath = format!("{}/0", epath);
        let subset = as_array(&entry[0], &spath, d);
        let element = parse_element(&entry[1], group, &format!("{}/1", epath), d);
        let Some(subset) = subset else {
            ok = false;
            continue;
        };
        let mut mask = 0usize;
        let mut prev = 0usize;
        let mut subset_ok = true;
        for (j, idx) in subset.iter().enumerate() {
            let ipath = format!("{}/{}", spath, j);
            match parse_usize_in(idx, 1, pieces as u64, &ipath, d) {
                Some(n) if n > prev => {
                    mask |= 1 << (n - 1);
                    prev = n;
                }
                Some(_) => {
                    d.push(Diagnostic::new(
                        "schema",
                        &ipath,
                        "subset indices must be strictly ascending",
                    ));
                    subset_ok = false;
                }
                None => subset_ok = false,
            }
        }
        if !subset_ok {
            ok = false;
            continue;
        }
        if by_mask[mask].is_some() {
            d.push(Diagnostic::new("schema", &spath, "duplicate subset"));
            ok = false;
            continue;
        }
        match element {
            Some(e) => by_mask[mask] = Some(e),
            None => ok = false,
        }
    }
    if !ok {
        return None;
    }
    let mut strata = Vec::with_capacity(total);
    for (mask, slot) in by_mask.into_iter().enumerate() {
        match slot {
            Some(e) => strata.push(e),
            None => {
                d.push(Diagnostic::new(
                    "schema",
                    &format!("{}/strata", path),
                    format!("missing subset with mask {:#b}", mask),
                ));
                ok = false;
            }
        }
    }
    if !ok {
        return None;
    }
    Some(CornerChi::new(group.expect("checked"), pieces, strata).expect("validated strata"))
}

fn parse_point(v: &Value, path: &str, d: &mut Vec<Diagnostic>) -> Option<Vec<f64>> {
    let arr = as_array(v, path, d)?;
    let mut out = Vec::with_capacity(arr.len());
    let mut ok = true;
    for (i, x) in arr.iter().enumerate() {
        match x.as_f64() {
            Some(f) if f.is_finite() => out.push(f),
            _ => {
                d.push(Diagnostic::new(
                    "schema",
                    &format!("{}/{}", path, i),
                    "expected a finite number",
                ));
                ok = false;
            }
        }
    }
    if ok {
        Some(out)
    } else {
        None
    }
}

/// Returns `Some(None)` when the request has no numeric block,
/// `Some(Some(..))` when it has a valid one, `None` on any violation.
fn parse_numeric_opt(
    obj: &Map<String, Value>,
    expected_vars: Option<usize>,
    d: &mut Vec<Diagnostic>,
) -> Option<Option<NumericRequest>> {
    let Some(v) = obj.get("numeric") else {
        return Some(None);
    };
    let nobj = as_object(v, "/numeric", d)?;
    for key in nobj.keys() {
        if key != "point" && key != "tol" {
            d.push(Diagnostic::new(
                "schema",
                &format!("/numeric/{}", key),
                "unknown field",
            ));
        }
    }
    let point =
        required_at(nobj, "point", "/numeric", d).and_then(|p| parse_point(p, "/numeric/point", d));
    let zeta_tol = match nobj.get("tol") {
        None => Some(1e-12),
        Some(t) => match t.as_f64() {
            Some(f) if (MIN_NUMERIC_TOL..=MAX_NUMERIC_TOL).contains(&f) => Some(f),
            Some(f) => {
                d.push(Diagnostic::new(
                    "range",
                    "/numeric/tol",
                    format!("{} outside {}..={}", f, MIN_NUMERIC_TOL, MAX_NUMERIC_TOL),
                ));
                None
            }
            None => {
                d.push(Diagnostic::new(
                    "schema",
                    "/numeric/tol",
                    "expected a number",
                ));
                None
            }
        },
    };
    let point = point?;
    if let Some(expected) = expected_vars {
        if point.len() != expected {
            d.push(Diagnostic::new(
                "dimension",
                "/numeric/point",
                format!(
                    "point length {} must equal result vars {}",
                    point.len(),
                    expected
                ),
            ));
            return None;
        }
    }
    Some(Some(NumericRequest {
        point,
        zeta_tol: zeta_tol?,
    }))
}

fn parse_series(v: &Value, path: &str, d: &mut Vec<Diagnostic>) -> Option<TorsionSeries> {
    let obj = as_object(v, path, d)?;
    for key in obj.keys() {
        if !["vars", "truncation", "grades"].contains(&key.as_str()) {
            d.push(Diagnostic::new(
                "schema",
                &format!("{}/{}", path, key),
                "unknown field",
            ));
        }
    }
    let vars = required_at(obj, "vars", path, d)
        .and_then(|v| parse_usize_in(v, 1, MAX_TORUS_RANK as u64, &format!("{}/vars", path), d));
    let truncation = required_at(obj, "truncation", path, d).and_then(|v| {
        parse_usize_in(
            v,
            1,
            MAX_TRUNCATION as u64,
            &format!("{}/truncation", path),
            d,
        )
    });
    let grades_val = required_at(obj, "grades", path, d)
        .and_then(|v| as_array(v, &format!("{}/grades", path), d));
    let (vars, truncation, grades_val) = (vars?, truncation?, grades_val?);

    let mut grades: BTreeMap<usize, Poly> = BTreeMap::new();
    let mut ok = true;
    for (i, g) in grades_val.iter().enumerate() {
        let gpath = format!("{}/grades/{}", path, i);
        let Some(gobj) = as_object(g, &gpath, d) else {
            ok = false;
            continue;
        };
        for key in gobj.keys() {
            if !["k", "zeta", "pi_pow", "poly"].contains(&key.as_str()) {
                d.push(Diagnostic::new(
                    "schema",
                    &format!("{}/{}", gpath, key),
                    "unknown field",
                ));
            }
        }
        let k = required_at(gobj, "k", &gpath, d)
            .and_then(|v| parse_usize_in(v, 1, truncation as u64, &format!("{}/k", gpath), d));
        let Some(k) = k else {
            ok = false;
            continue;
        };
        if grades.contains_key(&k) {
            d.push(Diagnostic::new(
                "schema",
                &format!("{}/k", gpath),
                format!("duplicate grade {}", k),
            ));
            ok = false;
            continue;
        }
        // The zeta and pi exponents are self-describing redundancy; when
        // present they must match the grade.
        if let Some(z) = gobj.get("zeta") {
            if z.as_u64() != Some(2 * k as u64 + 1) {
                d.push(Diagnostic::new(
                    "schema",
                    &format!("{}/zeta", gpath),
                    format!("grade {} carries zeta({})", k, 2 * k + 1),
                ));
                ok = false;
            }
        }
        if let Some(p) = gobj.get("pi_pow") {
            if p.as_i64() != Some(-2 * k as i64) {
                d.push(Diagnostic::new(
                    "schema",
                    &format!("{}/pi_pow", gpath),
                    format!("grade {} carries pi^({})", k, -2 * (k as i64)),
                ));
                ok = false;
            }
        }
        let poly = required_at(gobj, "poly", &gpath, d)
            .and_then(|p| parse_poly(p, vars, 2 * k as u32, &format!("{}/poly", gpath), d));
        match poly {
            Some(p) if p.is_zero() => {
                d.push(Diagnostic::new(
                    "schema",
                    &format!("{}/poly", gpath),
                    "grade polynomial must be nonzero (omit the grade instead)",
                ));
                ok = false;
            }
            Some(p) => {
                grades.insert(k, p);
            }
            None => ok = false,
        }
    }
    if !ok {
        return None;
    }
    Some(TorsionSeries::try_new(vars, truncation, grades).expect("validated grades"))
}

fn parse_poly(
    v: &Value,
    vars: usize,
    degree: u32,
    path: &str,
    d: &mut Vec<Diagnostic>,
) -> Option<Poly> {
    let obj = as_object(v, path, d)?;
    let mut terms = Vec::new();
    let mut ok = true;
    for (key, coeff) in obj {
        let tpath = format!("{}/{}", path, key);
        let exps = match parse_monomial(key, vars) {
            Some(e) => e,
            None => {
                d.push(Diagnostic::new(
                    "schema",
                    &tpath,
                    format!("{:?} is not a monomial in {} variable(s)", key, vars),
                ));
                ok = false;
                continue;
            }
        };
        let total: u32 = exps.iter().sum();
        if total != degree {
            d.push(Diagnostic::new(
                "schema",
                &tpath,
                format!("monomial degree {} must be {}", total, degree),
            ));
            ok = false;
            continue;
        }
        match parse_rational(coeff, &tpath, d) {
            Some(c) if c.is_zero() => {
                d.push(Diagnostic::new(
                    "schema",
                    &tpath,
                    "zero coefficients must be omitted",
                ));
                ok = false;
            }
            Some(c) => terms.push((exps, c)),
            None => ok = false,
        }
    }
    if !ok {
        return None;
    }
    Some(Poly::from_terms(vars, terms))
}

/// Monomial syntax: factors joined by `*`, each `y`, `y^e`, `yi`, or
/// `yi^e`; the bare name `y` is the single variable of a univariate series.
fn parse_monomial(s: &str, vars: usize) -> Option<Vec<u32>> {
    let mut exps = vec![0u32; vars];
    for factor in s.split('*') {
        let factor = factor.trim();
        let rest = factor.strip_prefix('y')?;
        let (index_part, exp_part) = match rest.find('^') {
            Some(pos) => (&rest[..pos], &rest[pos + 1..]),
            None => (rest, "1"),
        };
        let index = if index_part.is_empty() {
            if vars == 1 {
                1
            } else {
                return None;
            }
        } else {
            index_part.parse::<usize>().ok()?
        };
        if index == 0 || index > vars {
            return None;
        }
        let exp = exp_part.parse::<u32>().ok()?;
        if exp == 0 || exps[index - 1] != 0 {
            return None;
        }
        exps[index - 1] = exp;
    }
    Some(exps)
}
