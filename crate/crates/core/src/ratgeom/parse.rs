//! JSON polytope documents.
//!
//! ```json
//! {"name": "cp2", "dimension": 2,
//!  "facets": [{"normal": [0, -1], "offset": "0"},
//!             {"normal": [1, 1],  "offset": "7/3"},
//!             {"normal": [-1, 0], "offset": 0}],
//!  "normalize": false}
//! ```
//!
//! Offsets are exact: `"p/q"` / `"p"` strings or integer literals. Decimal
//! floats are rejected.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{HalfSpace, IntVector, Polytope, Rational};
use crate::{Error, Result};

#[derive(Deserialize)]
struct Document {
    name: Option<String>,
    dimension: usize,
    facets: Vec<FacetDoc>,
    #[serde(default)]
    normalize: bool,
}

#[derive(Deserialize)]
struct FacetDoc {
    normal: Vec<Value>,
    offset: Value,
}

/// Parse an exact rational from `"p/q"`, `"p"`, or an integer literal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("`{s}` is not an exact rational (expected p or p/q)"));
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::InvalidArgument(format!("`{s}` has a zero denominator")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

fn value_to_rational(v: &Value, facet: usize) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::Malformed(format!("facet {facet}: {e}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        _ => Err(Error::Malformed(format!(
            "facet {facet}: offset {v} must be an integer or a \"p/q\" string"
        ))),
    }
}

fn value_to_int(v: &Value, facet: usize) -> Result<BigInt> {
    let bad = || Error::Malformed(format!("facet {facet}: normal entry {v} is not an integer"));
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => BigInt::from_str(&n.to_string()).map_err(|_| bad()),
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

/// Parse a polytope document.
///
/// With `"normalize": true` a non-primitive normal is divided by its gcd
/// (offset likewise) and the facet index is recorded in
/// [`Polytope::normalized_facets`].
pub fn parse_polytope(text: &str) -> Result<Polytope> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut facets = Vec::with_capacity(doc.facets.len());
    let mut normalized = Vec::new();
    for (i, f) in doc.facets.iter().enumerate() {
        let normal = IntVector::new(
            f.normal
                .iter()
                .map(|v| value_to_int(v, i))
                .collect::<Result<Vec<_>>>()?,
        );
        let mut offset = value_to_rational(&f.offset, i)?;
        let mut normal = normal;
        let g = normal.gcd();
        if doc.normalize && !g.is_zero() && !g.is_one() {
            normal = normal.divided_by(&g);
            offset /= Rational::from_integer(g);
            normalized.push(i);
        }
        facets.push(HalfSpace::new(normal, offset));
    }
    Ok(Polytope::new(doc.dimension, facets, doc.name)?.with_normalized(normalized))
}

fn int_value(e: &BigInt) -> Value {
    match e.to_i64() {
        Some(x) => json!(x),
        None => json!(e.to_string()),
    }
}

pub fn polytope_to_value(p: &Polytope) -> Value {
    let facets: Vec<Value> = p
        .facets()
        .iter()
        .map(|f| {
            json!({
                "normal": f.normal.entries().iter().map(int_value).collect::<Vec<_>>(),
                "offset": f.offset.to_string(),
            })
        })
        .collect();
    let mut doc = json!({ "dimension": p.dimension(), "facets": facets });
    if let Some(name) = p.name() {
        doc["name"] = json!(name);
    }
    doc
}

/// Pretty-printed document that [`parse_polytope`] reads back unchanged.
pub fn polytope_to_json(p: &Polytope) -> String {
    serde_json::to_string_pretty(&polytope_to_value(p)).expect("json values serialize")
}
