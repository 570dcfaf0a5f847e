//! Output emission: canonical JSON, CSV, pretty text. Every polynomial that
//! leaves the process passes an internal re-parse round trip first.

use crate::Format;
use charvar_core::charvar::SurfaceData;
use charvar_core::jsonio::{to_canonical_string, unipoly_from_json, unipoly_to_json};
use charvar_core::rat::rat_to_string;
use charvar_core::{Error, UniPoly};
use serde_json::{json, Value};

/// JSON encoding of a polynomial, verified to re-parse to the same value.
pub fn poly_json_checked(p: &UniPoly) -> Result<Value, Error> {
    let v = unipoly_to_json(p);
    let back = unipoly_from_json(&v)?;
    if &back != p {
        return Err(Error::Internal(
            "polynomial failed the serialization round trip".to_string(),
        ));
    }
    Ok(v)
}

pub fn poly_csv(p: &UniPoly) -> String {
    let mut rows = String::from("exponent,coefficient\n");
    for (e, c) in p.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            rows.push_str(&format!("{e},{}\n", rat_to_string(c)));
        }
    }
    rows
}

/// Standard output document for a surface computation.
pub fn surface_poly_doc(
    s: &SurfaceData,
    key: &str,
    poly: &UniPoly,
    conjectural: Option<bool>,
) -> Result<Value, Error> {
    let mut doc = serde_json::Map::new();
    doc.insert("n".to_string(), json!(s.rank()));
    doc.insert("dim".to_string(), json!(s.dim_charvar()?));
    doc.insert("generic".to_string(), json!(true));
    doc.insert(key.to_string(), poly_json_checked(poly)?);
    if let Some(c) = conjectural {
        doc.insert("conjectural".to_string(), json!(c));
    }
    Ok(Value::Object(doc))
}

pub fn emit(
    format: Format,
    doc: &Value,
    csv: impl FnOnce() -> String,
    pretty: impl FnOnce() -> String,
) {
    match format {
        Format::Json => println!("{}", to_canonical_string(doc)),
        Format::Csv => print!("{}", csv()),
        Format::Pretty => println!("{}", pretty()),
    }
}
