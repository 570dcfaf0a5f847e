//! Input parsing: puncture descriptions, partitions, class specs.

use charvar_core::charvar::{EigenvalueData, EigenvalueSpec, EtaIndex, PunctureData, SurfaceData};
use charvar_core::fq::FqClassSpec;
use charvar_core::jsonio::partition_from_json;
use charvar_core::partition::Partition;
use charvar_core::rat::rat_from_str;
use charvar_core::Error;
use serde_json::Value;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Inline JSON or `@file`.
fn read_arg(text: &str) -> Result<String, Error> {
    if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {path}: {e}")))
    } else {
        Ok(text.to_string())
    }
}

fn parse_json(text: &str) -> Result<Value, Error> {
    serde_json::from_str(&read_arg(text)?).map_err(|e| invalid(format!("bad JSON: {e}")))
}

/// `"2"`, `"2,1"` or `"[2,1]"`.
pub fn parse_partition(text: &str) -> Result<Partition, Error> {
    let text = text.trim();
    if text.starts_with('[') {
        return partition_from_json(&parse_json(text)?);
    }
    let mut parts = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        parts.push(
            tok.parse::<u32>()
                .map_err(|_| invalid(format!("bad partition part {tok}")))?,
        );
    }
    Ok(Partition::new(parts))
}

/// JSON array of partitions.
pub fn parse_partition_list(text: &str) -> Result<Vec<Partition>, Error> {
    let v = parse_json(text)?;
    let arr = v
        .as_array()
        .ok_or_else(|| invalid("expected an array of partitions"))?;
    if arr.is_empty() {
        return Err(invalid("need at least one partition"));
    }
    arr.iter().map(partition_from_json).collect()
}

/// "3,5,7".
pub fn parse_primes(text: &str) -> Result<Vec<u64>, Error> {
    let mut out = Vec::new();
    for tok in text.split(',') {
        let q = tok
            .trim()
            .parse::<u64>()
            .map_err(|_| invalid(format!("bad prime {tok}")))?;
        if !charvar_core::fq::is_prime(q) {
            return Err(invalid(format!("{q} is not prime")));
        }
        out.push(q);
    }
    if out.is_empty() {
        return Err(invalid("need at least one prime"));
    }
    Ok(out)
}

/// `"[t1,t2,t3,t123]"`.
pub fn parse_traces(text: &str) -> Result<(u64, u64, u64, u64), Error> {
    let v = parse_json(text)?;
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| invalid("traces must be a 4-element array"))?;
    let mut t = [0u64; 4];
    for (i, x) in arr.iter().enumerate() {
        t[i] = x
            .as_u64()
            .ok_or_else(|| invalid("traces must be nonnegative integers"))?;
    }
    Ok((t[0], t[1], t[2], t[3]))
}

/// The puncture schema:
/// `[{"eigenvalues": [{"torsion": "a/b", "free": [ints], "mult": int,
///    "jordan": [ints]}, ...]}, ...]`
/// with two relaxations: a puncture may be `{"auto": true}` (regular
/// semisimple, needs --rank), and eigenvalue values (torsion/free) may be
/// omitted; then every value must be omitted and generic symbols are
/// generated automatically. A self-contained document
/// `{"genus": g, "punctures": [...]}` is also accepted (the genus must
/// agree with --genus).
pub fn parse_surface(genus: u32, rank: Option<u32>, text: &str) -> Result<SurfaceData, Error> {
    let v = parse_json(text)?;
    let v = match v.as_object() {
        Some(obj) if obj.contains_key("punctures") => {
            if let Some(g) = obj.get("genus").and_then(|g| g.as_u64()) {
                if g as u32 != genus {
                    return Err(invalid(format!(
                        "document genus {g} disagrees with --genus {genus}"
                    )));
                }
            }
            obj["punctures"].clone()
        }
        _ => v,
    };
    let arr = v
        .as_array()
        .ok_or_else(|| invalid("punctures must be an array"))?;
    if arr.is_empty() {
        return Err(invalid("need at least one puncture"));
    }

    // each puncture: list of (explicit value?, jordan)
    let mut parsed: Vec<Vec<(Option<EigenvalueSpec>, Partition)>> = Vec::new();
    for p in arr {
        let obj = p.as_object().ok_or_else(|| invalid("puncture must be an object"))?;
        if obj.get("auto").and_then(|a| a.as_bool()) == Some(true) {
            let n = rank.ok_or_else(|| invalid("auto punctures require --rank"))?;
            parsed.push((0..n).map(|_| (None, Partition::row(1))).collect());
            continue;
        }
        let eigenvalues = obj
            .get("eigenvalues")
            .and_then(|e| e.as_array())
            .ok_or_else(|| invalid("puncture needs an eigenvalues array"))?;
        let mut per = Vec::new();
        for e in eigenvalues {
            let eo = e.as_object().ok_or_else(|| invalid("eigenvalue must be an object"))?;
            let jordan = partition_from_json(
                eo.get("jordan").ok_or_else(|| invalid("eigenvalue needs jordan"))?,
            )?;
            if let Some(m) = eo.get("mult").and_then(|m| m.as_u64()) {
                if m as u32 != jordan.size() {
                    return Err(invalid(format!(
                        "mult {m} disagrees with |jordan| = {}",
                        jordan.size()
                    )));
                }
            }
            let has_value = eo.contains_key("torsion") || eo.contains_key("free");
            let value = if has_value {
                let torsion = match eo.get("torsion") {
                    None => charvar_core::BigRat::from_integer(0.into()),
                    Some(Value::String(s)) => {
                        rat_from_str(s).ok_or_else(|| invalid(format!("bad torsion {s}")))?
                    }
                    Some(Value::Number(n)) => charvar_core::BigRat::from_integer(
                        n.as_i64().ok_or_else(|| invalid("bad torsion"))?.into(),
                    ),
                    Some(_) => return Err(invalid("torsion must be a string or integer")),
                };
                let free = match eo.get("free") {
                    None => Vec::new(),
                    Some(Value::Array(a)) => a
                        .iter()
                        .map(|x| x.as_i64().ok_or_else(|| invalid("free exponents must be integers")))
                        .collect::<Result<Vec<i64>, Error>>()?,
                    Some(_) => return Err(invalid("free must be an array of integers")),
                };
                Some(EigenvalueSpec::new(torsion, free))
            } else {
                None
            };
            per.push((value, jordan));
        }
        if per.is_empty() {
            return Err(invalid("puncture needs at least one eigenvalue"));
        }
        parsed.push(per);
    }

    let explicit_count = parsed
        .iter()
        .flat_map(|p| p.iter())
        .filter(|(v, _)| v.is_some())
        .count();
    let total: usize = parsed.iter().map(|p| p.len()).sum();

    let s = if explicit_count == 0 {
        let jordan: Vec<Vec<Partition>> = parsed
            .iter()
            .map(|p| p.iter().map(|(_, lam)| lam.clone()).collect())
            .collect();
        SurfaceData::with_auto_eigenvalues(genus, jordan)?
    } else if explicit_count == total {
        let punctures = parsed
            .into_iter()
            .map(|per| {
                PunctureData::new(
                    per.into_iter()
                        .map(|(v, jordan)| EigenvalueData {
                            value: v.expect("explicit"),
                            jordan,
                        })
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>, Error>>()?;
        SurfaceData::new(genus, punctures)?
    } else {
        return Err(invalid(
            "eigenvalue values must be given for all eigenvalues or none",
        ));
    };

    if let Some(n) = rank {
        if s.rank() != n {
            return Err(invalid(format!(
                "--rank {n} disagrees with puncture data of rank {}",
                s.rank()
            )));
        }
    }
    Ok(s)
}

/// Nested arrays keyed `[puncture][eigenvalue][slot]`, each slot a partition.
pub fn parse_eta(text: &str) -> Result<EtaIndex, Error> {
    let v = parse_json(text)?;
    let arr = v.as_array().ok_or_else(|| invalid("eta must be an array"))?;
    let mut out = Vec::new();
    for p in arr {
        let pe = p
            .as_array()
            .ok_or_else(|| invalid("eta puncture entry must be an array"))?;
        let mut per = Vec::new();
        for e in pe {
            let slots = e
                .as_array()
                .ok_or_else(|| invalid("eta eigenvalue entry must be an array"))?;
            per.push(
                slots
                    .iter()
                    .map(partition_from_json)
                    .collect::<Result<Vec<_>, Error>>()?,
            );
        }
        out.push(per);
    }
    Ok(out)
}

/// Class JSON over F_q: `[{"eigenvalues": [{"value": 2, "jordan": [1]},...]},...]`.
pub fn parse_classes(text: &str, q: u64) -> Result<Vec<FqClassSpec>, Error> {
    let v = parse_json(text)?;
    let arr = v.as_array().ok_or_else(|| invalid("classes must be an array"))?;
    let mut out = Vec::new();
    for c in arr {
        let eigenvalues = c
            .get("eigenvalues")
            .and_then(|e| e.as_array())
            .ok_or_else(|| invalid("class needs an eigenvalues array"))?;
        let mut per = Vec::new();
        for e in eigenvalues {
            let value = e
                .get("value")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| invalid("eigenvalue needs an integer value"))?;
            let jordan = partition_from_json(
                e.get("jordan").ok_or_else(|| invalid("eigenvalue needs jordan"))?,
            )?;
            per.push((value, jordan));
        }
        out.push(FqClassSpec::new(q, per)?);
    }
    if out.is_empty() {
        return Err(invalid("need at least one class"));
    }
    Ok(out)
}
