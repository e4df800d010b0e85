//! Instance and map documents.
//!
//! ```json
//! {"points": [{"a": ["0/1", "4/1"], "b": ["2/1", "2/1"]}]}
//! ```
//!
//! A map file wraps the serialized map with the SHA-256 of the instance it
//! was built from, the tool version, and optionally the audit report.

use plext_core::extension::{Instance, RatPoint};
use plext_core::json::{map_from_json, map_to_json, parse_rational, rational_to_string, report_to_json};
use plext_core::verification::{AuditMode, AuditReport};
use plext_core::PlMap;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn coord_pair(v: Option<&Value>, what: &str) -> Result<RatPoint, CliError> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| parse_err(format!("{what} must be a pair of strings")))?;
    match arr.as_slice() {
        [Value::String(x), Value::String(y)] => Ok((
            parse_rational(x).map_err(|e| parse_err(e.to_string()))?,
            parse_rational(y).map_err(|e| parse_err(e.to_string()))?,
        )),
        _ => Err(parse_err(format!("{what} must be a pair of strings"))),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let points = doc.get("points").and_then(Value::as_array).ok_or_else(|| parse_err("missing \"points\" array"))?;
    if points.is_empty() {
        return Err(parse_err("\"points\" is empty"));
    }
    let mut sources = Vec::with_capacity(points.len());
    let mut targets = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        sources.push(coord_pair(p.get("a"), &format!("points[{i}].a"))?);
        targets.push(coord_pair(p.get("b"), &format!("points[{i}].b"))?);
    }
    Instance::new(sources, targets).map_err(|e| parse_err(e.to_string()))
}

pub fn instance_to_json(inst: &Instance) -> Value {
    let pt = |p: &RatPoint| json!([rational_to_string(&p.0), rational_to_string(&p.1)]);
    let points: Vec<Value> =
        inst.sources().iter().zip(inst.targets()).map(|(a, b)| json!({ "a": pt(a), "b": pt(b) })).collect();
    json!({ "points": points })
}

/// Pretty JSON with a trailing newline; key order is sorted, so output is
/// deterministic.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// SHA-256 of the instance's compact canonical serialization.
pub fn instance_hash(inst: &Instance) -> String {
    let canonical = serde_json::to_string(&instance_to_json(inst)).expect("values always serialize");
    Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn mode_name(mode: &AuditMode) -> &'static str {
    match mode {
        AuditMode::Exact => "exact",
        AuditMode::Approximate(_) => "approx",
    }
}

/// The audit section of a map file: the report plus the settings that
/// produced it.
pub fn audit_to_json(report: &AuditReport, mode: &AuditMode, samples: usize, seed: u64) -> Value {
    let mut v = report_to_json(report);
    let obj = v.as_object_mut().expect("report is an object");
    obj.insert("mode".into(), Value::from(mode_name(mode)));
    obj.insert("samples".into(), Value::from(samples));
    obj.insert("seed".into(), Value::from(seed));
    if let AuditMode::Approximate(tol) = mode {
        obj.insert("tolerance".into(), Value::from(rational_to_string(tol)));
    }
    v
}

pub fn map_file_to_json(inst: &Instance, f: &PlMap, audit: Option<Value>) -> Value {
    let mut v = json!({
        "instance_hash": instance_hash(inst),
        "tool_version": TOOL_VERSION,
        "map": map_to_json(f),
    });
    if let Some(a) = audit {
        v.as_object_mut().expect("object").insert("audit".into(), a);
    }
    v
}

pub struct MapFile {
    pub instance_hash: String,
    pub tool_version: String,
    pub map: PlMap,
}

pub fn parse_map_file(text: &str) -> Result<MapFile, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let field = |k: &str| {
        doc.get(k).and_then(Value::as_str).map(str::to_string).ok_or_else(|| parse_err(format!("missing {k:?}")))
    };
    let map = map_from_json(doc.get("map").ok_or_else(|| parse_err("missing \"map\""))?)
        .map_err(|e| parse_err(e.to_string()))?;
    Ok(MapFile {
        instance_hash: field("instance_hash")?,
        tool_version: field("tool_version")?,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use plext_core::extend_all;

    const GOLDEN: &str = r#"{"points": [
        {"a": ["0", "0"], "b": ["0", "0"]},
        {"a": ["4/1", "0/1"], "b": ["4/1", "0/1"]},
        {"a": ["0/1", "8/2"], "b": ["2/1", "2/1"]}
    ]}"#;

    #[test]
    fn instance_round_trip() {
        let inst = parse_instance(GOLDEN).unwrap();
        assert_eq!(inst.len(), 3);
        let once = to_pretty(&instance_to_json(&inst));
        let twice = to_pretty(&instance_to_json(&parse_instance(&once).unwrap()));
        assert_eq!(once, twice);
        assert!(once.contains("\"4/1\""));
    }

    #[test]
    fn instance_parse_errors() {
        assert!(parse_instance("{").is_err());
        assert!(parse_instance(r#"{"points": []}"#).is_err());
        assert!(parse_instance(r#"{"points": [{"a": ["1", "x"], "b": ["0", "0"]}]}"#).is_err());
        assert!(parse_instance(r#"{"points": [{"a": [1, 2], "b": ["0", "0"]}]}"#).is_err());
    }

    #[test]
    fn map_file_round_trip() {
        let inst = parse_instance(GOLDEN).unwrap();
        let f = extend_all(&inst).unwrap();
        let text = to_pretty(&map_file_to_json(&inst, &f, None));
        let back = parse_map_file(&text).unwrap();
        assert!(back.map.same_as(&f));
        assert_eq!(back.instance_hash, instance_hash(&inst));
        assert_eq!(to_pretty(&map_file_to_json(&inst, &back.map, None)), text);
    }

    #[test]
    fn hash_is_stable_across_spellings() {
        let a = parse_instance(GOLDEN).unwrap();
        let b = parse_instance(&GOLDEN.replace("\"8/2\"", "\"4\"")).unwrap();
        assert_eq!(instance_hash(&a), instance_hash(&b));
        assert_eq!(instance_hash(&a).len(), 64);
    }
}
