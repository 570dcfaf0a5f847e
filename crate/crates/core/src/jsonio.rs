//! JSON encodings shared by the disk cache and the CLI output layer.
//!
//! Polynomials are lossless: exponents are JSON numbers, coefficients are
//! decimal integer strings or "num/den" strings. Key order is always sorted
//! so identical data serializes to identical bytes.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::multisym::MultiSymFunc;
use crate::partition::Partition;
use crate::rat::{rat_from_str, rat_to_string, rat_as_i64, BigRat};
use crate::symfunc::{Basis, SymFunc1};
use crate::unipoly::UniPoly;
use crate::zwpoly::ZWPoly;
use serde_json::{json, Map, Value};

pub fn partition_to_json(p: &Partition) -> Value {
    Value::Array(p.parts().iter().map(|&x| json!(x)).collect())
}

pub fn partition_from_json(v: &Value) -> Result<Partition> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("partition must be an array".to_string()))?;
    let mut parts = Vec::with_capacity(arr.len());
    for x in arr {
        let n = x
            .as_u64()
            .ok_or_else(|| Error::InvalidInput("partition parts must be nonnegative integers".to_string()))?;
        parts.push(n as u32);
    }
    Ok(Partition::new(parts))
}

/// Sorted [e_z, e_w, num, den] quadruples with decimal strings for the
/// big integers.
pub fn zwpoly_to_json(p: &ZWPoly) -> Value {
    let mut quads = Vec::new();
    for (&(a, b), c) in p.terms() {
        quads.push(json!([a, b, c.numer().to_string(), c.denom().to_string()]));
    }
    Value::Array(quads)
}

pub fn zwpoly_from_json(v: &Value) -> Result<ZWPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("polynomial must be an array".to_string()))?;
    let mut p = ZWPoly::zero();
    for quad in arr {
        let q = quad
            .as_array()
            .filter(|q| q.len() == 4)
            .ok_or_else(|| Error::InvalidInput("term must be a quadruple".to_string()))?;
        let a = q[0].as_u64().ok_or_else(bad_term)? as u32;
        let b = q[1].as_u64().ok_or_else(bad_term)? as u32;
        let num = q[2].as_str().ok_or_else(bad_term)?;
        let den = q[3].as_str().ok_or_else(bad_term)?;
        let c = rat_from_str(&format!("{num}/{den}")).ok_or_else(bad_term)?;
        p = &p + &ZWPoly::monomial(c, a, b);
    }
    Ok(p)
}

fn bad_term() -> Error {
    Error::InvalidInput("malformed polynomial term".to_string())
}

pub fn fieldelem_to_json(f: &FieldElem) -> Value {
    json!({
        "num": zwpoly_to_json(f.num()),
        "den": zwpoly_to_json(f.den()),
    })
}

pub fn fieldelem_from_json(v: &Value) -> Result<FieldElem> {
    let num = zwpoly_from_json(
        v.get("num")
            .ok_or_else(|| Error::InvalidInput("missing num".to_string()))?,
    )?;
    let den = zwpoly_from_json(
        v.get("den")
            .ok_or_else(|| Error::InvalidInput("missing den".to_string()))?,
    )?;
    FieldElem::new(num, den)
}

/// {basis, terms: [[partition, fieldelem], ...]} with terms sorted by key.
pub fn symfunc_to_json(f: &SymFunc1<FieldElem>) -> Value {
    let mut terms = Vec::new();
    for (lam, c) in f.terms() {
        terms.push(json!([partition_to_json(lam), fieldelem_to_json(c)]));
    }
    json!({
        "basis": f.basis().letter().to_string(),
        "terms": Value::Array(terms),
    })
}

pub fn symfunc_from_json(v: &Value, degree_bound: usize) -> Result<SymFunc1<FieldElem>> {
    let basis = match v.get("basis").and_then(|b| b.as_str()) {
        Some("m") => Basis::Monomial,
        Some("e") => Basis::Elementary,
        Some("h") => Basis::Complete,
        Some("p") => Basis::PowerSum,
        Some("s") => Basis::Schur,
        _ => return Err(Error::InvalidInput("unknown basis".to_string())),
    };
    let mut f = SymFunc1::zero_with_bound(basis, degree_bound);
    let terms = v
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| Error::InvalidInput("missing terms".to_string()))?;
    for t in terms {
        let pair = t
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::InvalidInput("term must be a pair".to_string()))?;
        let lam = partition_from_json(&pair[0])?;
        let c = fieldelem_from_json(&pair[1])?;
        f.add_term(lam, c)?;
    }
    Ok(f)
}

pub fn multisym_to_json(f: &MultiSymFunc) -> Value {
    let mut terms = Vec::new();
    for (key, c) in f.terms() {
        let key_json: Vec<Value> = key.iter().map(partition_to_json).collect();
        terms.push(json!([Value::Array(key_json), fieldelem_to_json(c)]));
    }
    json!({
        "alphabets": f.alphabets(),
        "terms": Value::Array(terms),
    })
}

pub fn multisym_from_json(v: &Value) -> Result<MultiSymFunc> {
    let k = v
        .get("alphabets")
        .and_then(|a| a.as_u64())
        .ok_or_else(|| Error::InvalidInput("missing alphabets".to_string()))? as usize;
    let mut f = MultiSymFunc::zero(k);
    let terms = v
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| Error::InvalidInput("missing terms".to_string()))?;
    for t in terms {
        let pair = t
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::InvalidInput("term must be a pair".to_string()))?;
        let key_arr = pair[0]
            .as_array()
            .ok_or_else(|| Error::InvalidInput("key must be an array".to_string()))?;
        let key: Vec<Partition> = key_arr
            .iter()
            .map(partition_from_json)
            .collect::<Result<_>>()?;
        let c = fieldelem_from_json(&pair[1])?;
        f.add_term(key, c);
    }
    Ok(f)
}

/// Sorted [exponent, coefficient] pairs; coefficients are JSON integers when
/// they fit in i64 and decimal (or num/den) strings otherwise.
pub fn unipoly_to_json(p: &UniPoly) -> Value {
    let mut pairs = Vec::new();
    for (e, c) in p.coeffs().iter().enumerate() {
        if c == &BigRat::from_integer(0.into()) {
            continue;
        }
        pairs.push(json!([e, rat_json(c)]));
    }
    Value::Array(pairs)
}

fn rat_json(c: &BigRat) -> Value {
    match rat_as_i64(c) {
        Some(n) => json!(n),
        None => json!(rat_to_string(c)),
    }
}

pub fn unipoly_from_json(v: &Value) -> Result<UniPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("polynomial must be an array".to_string()))?;
    let mut p = UniPoly::zero();
    for pair in arr {
        let pr = pair
            .as_array()
            .filter(|x| x.len() == 2)
            .ok_or_else(bad_term)?;
        let e = pr[0].as_u64().ok_or_else(bad_term)? as usize;
        let c = match &pr[1] {
            Value::Number(n) => {
                let i = n.as_i64().ok_or_else(bad_term)?;
                BigRat::from_integer(i.into())
            }
            Value::String(s) => rat_from_str(s).ok_or_else(bad_term)?,
            _ => return Err(bad_term()),
        };
        p = &p + &UniPoly::monomial(c, e);
    }
    Ok(p)
}

/// Bivariate polynomial (exponent pair semantics chosen by the caller, e.g.
/// q, v) as sorted [e1, e2, coefficient] triples.
pub fn bipoly_to_json(p: &ZWPoly) -> Value {
    let mut triples = Vec::new();
    for (&(a, b), c) in p.terms() {
        triples.push(json!([a, b, rat_json(c)]));
    }
    Value::Array(triples)
}

/// Canonical serialization: sorted keys, no insignificant whitespace
/// variation; identical values produce identical bytes.
pub fn to_canonical_string(v: &Value) -> String {
    let sorted = sort_value(v);
    serde_json::to_string_pretty(&sorted).expect("serializable")
}

fn sort_value(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut sorted = Map::new();
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            for k in keys {
                sorted.insert(k.clone(), sort_value(&m[k]));
            }
            Value::Object(sorted)
        }
        Value::Array(a) => Value::Array(a.iter().map(sort_value).collect()),
        other => other.clone(),
    }
}
