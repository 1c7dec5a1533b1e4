//! JSON encodings of scalars, matrices, representations and covers.
//!
//! Rationals are strings `"p/q"`; cyclotomic elements are
//! `{"conductor": N, "coeffs": ["p/q", ...]}` in the power basis of
//! `Q(zeta_N)`. Permutations are one-line images numbered from 1.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::covers::{cover_from_permutations, CoverError, PermutationCover};
use crate::linear::poly::lcm;
use crate::linear::scalar::{format_rational, parse_rational};
use crate::linear::{Cyc, Matrix, Rational, Scalar};
use crate::rep::{CycRep, RepError, Representation};
use crate::surface::{generator_names, SurfaceSig};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("malformed {what}: {detail}")]
    Shape { what: &'static str, detail: String },
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

fn shape(what: &'static str, detail: impl Into<String>) -> JsonError {
    JsonError::Shape { what, detail: detail.into() }
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value) -> Result<Rational, JsonError> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| shape("rational", s.clone())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_i64(n.as_i64().expect("checked"))),
        other => Err(shape("rational", other.to_string())),
    }
}

pub fn cyc_to_json(x: &Cyc) -> Value {
    let x = x.normalize();
    match x.to_rational() {
        Some(q) => rational_to_json(&q),
        None => json!({
            "conductor": x.conductor(),
            "coeffs": x.coeffs().iter().map(rational_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn cyc_from_json(v: &Value) -> Result<Cyc, JsonError> {
    match v {
        Value::Object(m) => {
            let n = m
                .get("conductor")
                .and_then(Value::as_u64)
                .filter(|&n| (1..=crate::linear::cyclotomic::MAX_CONDUCTOR).contains(&n))
                .ok_or_else(|| shape("cyclotomic", "conductor must be an integer in 1..=5040"))?;
            let coeffs = m
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| shape("cyclotomic", "missing coeffs"))?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Cyc::new(n, coeffs))
        }
        other => Ok(Cyc::rational(rational_from_json(other)?)),
    }
}

pub fn matrix_to_json(m: &Matrix<Cyc>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(cyc_to_json).collect())).collect())
}

pub fn rational_matrix_to_json(m: &Matrix<Rational>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(rational_to_json).collect())).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix<Cyc>, JsonError> {
    let rows = v.as_array().ok_or_else(|| shape("matrix", "expected an array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| shape("matrix", "row is not an array"))?
                .iter()
                .map(cyc_from_json)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(shape("matrix", "expected a nonempty square matrix"));
    }
    Ok(Matrix::from_rows(rows))
}

pub fn surface_to_json(sig: SurfaceSig) -> Value {
    json!({"genus": sig.genus, "punctures": sig.punctures, "boundary": sig.boundary})
}

pub fn surface_from_json(v: &Value) -> Result<SurfaceSig, JsonError> {
    Ok(serde_json::from_value(v.clone())?)
}

/// Least common conductor of the entries.
pub fn conductor_of<'a>(mats: impl IntoIterator<Item = &'a Matrix<Cyc>>) -> u64 {
    mats.into_iter()
        .flat_map(|m| m.data().iter())
        .fold(1, |acc, x| lcm(acc, x.normalize().conductor()))
}

/// Only representations on standard presentations round-trip; pulled back
/// representations are written with their generator names.
pub fn rep_to_json(rho: &CycRep) -> Value {
    let mut obj = Map::new();
    obj.insert("surface".into(), surface_to_json(rho.sig()));
    obj.insert("images".into(), Value::Array(rho.images().iter().map(matrix_to_json).collect()));
    obj.insert("conductor".into(), json!(conductor_of(rho.images())));
    if rho.presentation().names != generator_names(rho.sig()) {
        obj.insert("generators".into(), json!(rho.presentation().names));
    }
    Value::Object(obj)
}

pub fn rep_from_json(v: &Value) -> Result<CycRep, JsonError> {
    let sig = surface_from_json(v.get("surface").ok_or_else(|| shape("representation", "missing surface"))?)?;
    let images = v
        .get("images")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("representation", "missing images"))?
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Representation::new(sig, images)?)
}

pub fn rep_from_str(s: &str) -> Result<CycRep, JsonError> {
    rep_from_json(&serde_json::from_str(s)?)
}

pub fn cover_to_json(c: &PermutationCover) -> Value {
    let names = generator_names(c.base);
    let perms: Map<String, Value> = names
        .iter()
        .zip(&c.perms)
        .map(|(n, p)| (n.clone(), json!(p.iter().map(|x| x + 1).collect::<Vec<_>>())))
        .collect();
    json!({
        "surface": surface_to_json(c.base),
        "degree": c.degree,
        "perms": perms,
        "cover_surface": surface_to_json(c.sig),
    })
}

/// Reads a cover; the base surface comes from the `"surface"` field or from `base`.
pub fn cover_from_json(v: &Value, base: Option<SurfaceSig>) -> Result<PermutationCover, JsonError> {
    let sig = match v.get("surface") {
        Some(s) => surface_from_json(s)?,
        None => base.ok_or_else(|| shape("cover", "missing surface"))?,
    };
    let degree = v.get("degree").and_then(Value::as_u64).ok_or_else(|| shape("cover", "missing degree"))? as usize;
    let perms_obj = v.get("perms").and_then(Value::as_object).ok_or_else(|| shape("cover", "missing perms"))?;
    let identity: Vec<usize> = (0..degree).collect();
    let mut perms = Vec::new();
    for name in generator_names(sig) {
        let p = match perms_obj.get(&name) {
            None => identity.clone(),
            Some(p) => p
                .as_array()
                .ok_or_else(|| shape("cover", format!("permutation for {name} is not an array")))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .filter(|&x| x >= 1)
                        .map(|x| x as usize - 1)
                        .ok_or_else(|| shape("cover", format!("bad image in permutation for {name}")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        perms.push(p);
    }
    if let Some(extra) = perms_obj.keys().find(|k| !generator_names(sig).contains(k)) {
        return Err(shape("cover", format!("unknown generator {extra}")));
    }
    Ok(cover_from_permutations(sig, perms, 0)?)
}
