//! JSON forms of the public data types.
//!
//! Rationals are written as `"p/q"` strings (always with a denominator).
//! A matrix is an array of rows, each row an array of `[re, im]` pairs.
//! Doubles round-trip bit-exactly. [`canonical`] sorts object keys
//! recursively so output is byte-stable.

use serde_json::{json, Map, Value};

use crate::bridge::{AlgebraParams, GenDim};
use crate::coxeter::{GVector, UnwindRoute};
use crate::error::{Error, Result};
use crate::membership::{MembershipDecision, Witness};
use crate::rational::{self, Q};
use crate::rep::{CMat, StarRep, C64};

const FAMILY_KEYS: [&str; 3] = ["P", "Q", "S"];

fn err(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn rationals(xs: &[Q]) -> Value {
    Value::from(rational::format_list(xs))
}

pub fn gvector(v: &GVector) -> Value {
    Value::from(v.to_strings())
}

pub fn gendim(n: &GenDim) -> Value {
    json!({ "n0": n.n0, "n_p": n.n_p, "n_q": n.n_q, "n_s": n.n_s })
}

pub fn matrix(m: &CMat) -> Result<Value> {
    let mut rows = Vec::with_capacity(m.nrows());
    for i in 0..m.nrows() {
        let mut row = Vec::with_capacity(m.ncols());
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(err(format!("non-finite matrix entry at ({i}, {j})")));
            }
            row.push(json!([z.re, z.im]));
        }
        rows.push(Value::Array(row));
    }
    Ok(Value::Array(rows))
}

pub fn star_rep(r: &StarRep) -> Result<Value> {
    let mut families = Map::new();
    for (key, fam) in FAMILY_KEYS.iter().zip(&r.families) {
        families.insert((*key).into(), Value::Array(fam.iter().map(matrix).collect::<Result<_>>()?));
    }
    Ok(json!({
        "alpha": rationals(&r.params.alpha),
        "beta": rationals(&r.params.beta),
        "delta": rationals(&r.params.delta),
        "gamma": rational::format(&r.params.gamma),
        "gendim": gendim(&r.gendim),
        "families": families,
    }))
}

pub fn witness(w: &Witness) -> Value {
    json!({
        "gendim": gendim(&w.gendim),
        "dim": gvector(&w.dim),
        "steps": w.steps,
        "case": w.case,
    })
}

pub fn decision(d: &MembershipDecision) -> Value {
    json!({
        "member": d.member,
        "method": d.method,
        "witnesses": d.witnesses.iter().map(witness).collect::<Vec<_>>(),
        "failed_conditions": d.failed_conditions,
    })
}

pub fn unwind_route(r: &UnwindRoute) -> Value {
    json!({
        "first": r.first,
        "steps": r.steps,
        "terminal": r.terminal,
        "final_dim": gvector(&r.final_dim),
        "final_character": gvector(&r.final_character),
        "failure": r.failure,
    })
}

/// Recursively sorted object keys.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let sorted: std::collections::BTreeMap<String, Value> =
                map.into_iter().map(|(k, v)| (k, canonical(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(canonical).collect()),
        other => other,
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(format!("missing field {key:?}")))
}

fn parse_rational(v: &Value) -> Result<Q> {
    let s = v.as_str().ok_or_else(|| err(format!("expected a rational string, got {v}")))?;
    rational::parse(s)
}

fn parse_rationals(v: &Value) -> Result<Vec<Q>> {
    v.as_array().ok_or_else(|| err(format!("expected an array, got {v}")))?.iter().map(parse_rational).collect()
}

fn parse_count(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| err(format!("expected a non-negative integer, got {v}")))
}

fn parse_counts(v: &Value) -> Result<Vec<usize>> {
    v.as_array().ok_or_else(|| err(format!("expected an array, got {v}")))?.iter().map(parse_count).collect()
}

pub fn parse_gendim(v: &Value) -> Result<GenDim> {
    Ok(GenDim::new(
        parse_count(field(v, "n0")?)?,
        parse_counts(field(v, "n_p")?)?,
        parse_counts(field(v, "n_q")?)?,
        parse_counts(field(v, "n_s")?)?,
    ))
}

pub fn parse_matrix(v: &Value, n: usize) -> Result<CMat> {
    let rows = v.as_array().ok_or_else(|| err("matrix must be an array of rows"))?;
    if rows.len() != n {
        return Err(err(format!("matrix has {} rows, expected {n}", rows.len())));
    }
    let mut m = CMat::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| err("matrix row must be an array"))?;
        if row.len() != n {
            return Err(err(format!("matrix row {i} has {} entries, expected {n}", row.len())));
        }
        for (j, z) in row.iter().enumerate() {
            let pair = z.as_array().filter(|p| p.len() == 2).ok_or_else(|| err("entry must be [re, im]"))?;
            let part = |x: &Value| x.as_f64().ok_or_else(|| err(format!("entry ({i}, {j}) is not a number")));
            m[(i, j)] = C64::new(part(&pair[0])?, part(&pair[1])?);
        }
    }
    Ok(m)
}

pub fn parse_star_rep(v: &Value) -> Result<StarRep> {
    let params = AlgebraParams::new(
        parse_rationals(field(v, "alpha")?)?,
        parse_rationals(field(v, "beta")?)?,
        parse_rationals(field(v, "delta")?)?,
        parse_rational(field(v, "gamma")?)?,
    )?;
    let gendim = parse_gendim(field(v, "gendim")?)?;
    if gendim.lengths() != params.lengths() {
        return Err(err(format!(
            "gendim lengths {:?} do not match parameter lengths {:?}",
            gendim.lengths(),
            params.lengths()
        )));
    }
    let fams = field(v, "families")?;
    let mut families: [Vec<CMat>; 3] = Default::default();
    for (b, key) in FAMILY_KEYS.iter().enumerate() {
        let list = field(fams, key)?.as_array().ok_or_else(|| err(format!("family {key} must be an array")))?;
        if list.len() != params.lengths()[b] {
            return Err(err(format!("family {key} has {} matrices, expected {}", list.len(), params.lengths()[b])));
        }
        families[b] = list.iter().map(|m| parse_matrix(m, gendim.n0)).collect::<Result<_>>()?;
    }
    Ok(StarRep { params, gendim, families })
}

/// Pretty-printed with sorted keys.
pub fn to_string_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(&canonical(v.clone())).expect("serializing a Value cannot fail")
}

pub fn from_str(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| err(e.to_string()))
}
