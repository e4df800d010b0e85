//! JSON encoding of exact values, maps and audit reports.
//!
//! Numbers are stored as expression trees over rational strings `"p/q"`,
//! with a 12-digit decimal next to each as a human-readable annotation that
//! parsing ignores:
//!
//! ```json
//! {"exact": {"op": "sqrt", "args": [{"rat": "2/1"}]}, "approx": "1.414213562373"}
//! ```

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::exact::{ExactError, ExactNumber, NodeView, Op, Rational};
use crate::geometry::{ConvexPolygon, GeometryError, Point};
use crate::motion::Motion;
use crate::pl_map::{PlMap, PlMapError, Witness};
use crate::verification::{AuditReport, AuditWitness};

pub const APPROX_DIGITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("not a rational: {0:?}")]
    BadRational(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Map(#[from] PlMapError),
}

fn malformed(what: &str) -> JsonError {
    JsonError::Malformed(what.to_string())
}

pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`; the denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational, JsonError> {
    let bad = || JsonError::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn tree(x: &ExactNumber) -> Value {
    match x.view() {
        NodeView::Rational(r) => json!({ "rat": rational_to_string(r) }),
        NodeView::Binary(op, a, b) => json!({ "op": op.name(), "args": [tree(a), tree(b)] }),
        NodeView::Sqrt(a) => json!({ "op": Op::Sqrt.name(), "args": [tree(a)] }),
    }
}

fn parse_tree(v: &Value) -> Result<ExactNumber, JsonError> {
    let obj = v.as_object().ok_or_else(|| malformed("expression node is not an object"))?;
    if let Some(r) = obj.get("rat") {
        let s = r.as_str().ok_or_else(|| malformed("rat is not a string"))?;
        return Ok(ExactNumber::from_rational(parse_rational(s)?));
    }
    let name = obj.get("op").and_then(Value::as_str).ok_or_else(|| malformed("node lacks rat or op"))?;
    let op = Op::from_name(name).ok_or_else(|| JsonError::Malformed(format!("unknown op {name:?}")))?;
    let args = obj.get("args").and_then(Value::as_array).ok_or_else(|| malformed("op node lacks args"))?;
    let args = args.iter().map(parse_tree).collect::<Result<Vec<_>, _>>()?;
    match (op, args.as_slice()) {
        (Op::Sqrt, [a]) => Ok(a.sqrt()?),
        (Op::Add, [a, b]) => Ok(a + b),
        (Op::Sub, [a, b]) => Ok(a - b),
        (Op::Mul, [a, b]) => Ok(a * b),
        (Op::Div, [a, b]) => Ok(a.checked_div(b)?),
        _ => Err(JsonError::Malformed(format!("wrong arity for {name}"))),
    }
}

pub fn number_to_json(x: &ExactNumber) -> Value {
    json!({ "exact": tree(x), "approx": x.to_decimal(APPROX_DIGITS) })
}

pub fn number_from_json(v: &Value) -> Result<ExactNumber, JsonError> {
    parse_tree(v.get("exact").ok_or_else(|| malformed("number lacks exact"))?)
}

pub fn point_to_json(p: &Point) -> Value {
    json!([number_to_json(&p.x), number_to_json(&p.y)])
}

pub fn point_from_json(v: &Value) -> Result<Point, JsonError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(number_from_json(x)?, number_from_json(y)?)),
        _ => Err(malformed("point is not a pair")),
    }
}

pub fn motion_to_json(m: &Motion) -> Value {
    let r = m.linear();
    let t = m.offset();
    json!({
        "R": [[number_to_json(&r[0][0]), number_to_json(&r[0][1])], [number_to_json(&r[1][0]), number_to_json(&r[1][1])]],
        "t": [number_to_json(&t[0]), number_to_json(&t[1])],
    })
}

fn pair(v: &Value, what: &str) -> Result<[ExactNumber; 2], JsonError> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok([number_from_json(a)?, number_from_json(b)?]),
        _ => Err(JsonError::Malformed(format!("{what} is not a pair"))),
    }
}

/// Orthogonality is not checked here so damaged files still load and fail
/// their audits.
pub fn motion_from_json(v: &Value) -> Result<Motion, JsonError> {
    let r = v.get("R").and_then(Value::as_array).ok_or_else(|| malformed("motion lacks R"))?;
    let [r0, r1] = r.as_slice() else {
        return Err(malformed("R is not 2x2"));
    };
    let t = pair(v.get("t").ok_or_else(|| malformed("motion lacks t"))?, "t")?;
    Ok(Motion::from_parts_unchecked([pair(r0, "R row")?, pair(r1, "R row")?], t))
}

pub fn map_to_json(f: &PlMap) -> Value {
    json!({
        "domain": f.domain().vertices().iter().map(point_to_json).collect::<Vec<_>>(),
        "vertices": f.vertices().iter().map(point_to_json).collect::<Vec<_>>(),
        "triangles": f.triangle_indices(),
        "motions": f.motions().iter().map(motion_to_json).collect::<Vec<_>>(),
    })
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.get(key).and_then(Value::as_array).ok_or_else(|| JsonError::Malformed(format!("missing array {key:?}")))
}

pub fn map_from_json(v: &Value) -> Result<PlMap, JsonError> {
    let domain = array(v, "domain")?.iter().map(point_from_json).collect::<Result<Vec<_>, _>>()?;
    let vertices = array(v, "vertices")?.iter().map(point_from_json).collect::<Result<Vec<_>, _>>()?;
    let motions = array(v, "motions")?.iter().map(motion_from_json).collect::<Result<Vec<_>, _>>()?;
    let triangles = array(v, "triangles")?
        .iter()
        .map(|t| {
            let idx: Option<Vec<usize>> =
                t.as_array().map(|a| a.iter().filter_map(|i| i.as_u64().map(|i| i as usize)).collect());
            match idx.as_deref() {
                Some(&[a, b, c, m]) => Ok([a, b, c, m]),
                _ => Err(malformed("triangle is not four indices")),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PlMap::from_parts(ConvexPolygon::new(domain)?, vertices, triangles, motions)?)
}

fn witness_to_json(w: &AuditWitness) -> Value {
    match w {
        AuditWitness::Constraint {
            index,
            source,
            expected,
            actual,
        } => json!({
            "kind": "constraint",
            "index": index,
            "source": point_to_json(source),
            "expected": point_to_json(expected),
            "actual": actual.as_ref().map(point_to_json),
        }),
        AuditWitness::Pair { p, q } => json!({ "kind": "pair", "p": point_to_json(p), "q": point_to_json(q) }),
        AuditWitness::Structure(Witness::Triangle(i)) => json!({ "kind": "triangle", "index": i }),
        AuditWitness::Structure(Witness::TrianglePair(i, j)) => json!({ "kind": "triangle_pair", "i": i, "j": j }),
        AuditWitness::Structure(Witness::Motion(i)) => json!({ "kind": "motion", "index": i }),
        AuditWitness::Structure(Witness::Vertex(i)) => json!({ "kind": "vertex", "index": i }),
        AuditWitness::Point { step, point } => json!({ "kind": "point", "step": step, "point": point_to_json(point) }),
    }
}

pub fn report_to_json(r: &AuditReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("name".into(), Value::from(c.name.clone()));
            m.insert("passed".into(), Value::from(c.passed));
            m.insert("witness".into(), c.witness.as_ref().map(witness_to_json).unwrap_or(Value::Null));
            Value::Object(m)
        })
        .collect();
    json!({ "all_passed": r.all_passed(), "checks": checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{extend_all, Instance};
    use crate::verification::{audit_all, AuditConfig};

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-4").unwrap(), Rational::from_integer((-4).into()));
        assert!(matches!(parse_rational("1/0"), Err(JsonError::BadRational(_))));
        assert!(matches!(parse_rational("x"), Err(JsonError::BadRational(_))));
        assert_eq!(rational_to_string(&Rational::new(6.into(), (-4).into())), "-3/2");
    }

    #[test]
    fn radical_numbers_round_trip() {
        let x = ExactNumber::from_integer(2).sqrt().unwrap() + ExactNumber::from_ratio(1, 3);
        let v = number_to_json(&x);
        assert_eq!(v["approx"], "1.747546895706");
        let back = number_from_json(&v).unwrap();
        assert_eq!(back, x);
        assert_eq!(number_to_json(&back), v);
    }

    #[test]
    fn map_round_trip() {
        let inst = Instance::from_ints(&[(0, 0), (4, 0), (0, 4)], &[(0, 0), (4, 0), (2, 2)]).unwrap();
        let f = extend_all(&inst).unwrap();
        let v = map_to_json(&f);
        let g = map_from_json(&v).unwrap();
        assert!(f.same_as(&g));
        assert_eq!(serde_json::to_string(&map_to_json(&g)).unwrap(), serde_json::to_string(&v).unwrap());
        let report = report_to_json(&audit_all(&f, &inst, &AuditConfig::default()));
        assert_eq!(report["all_passed"], true);
    }

    #[test]
    fn malformed_maps_are_rejected() {
        assert!(map_from_json(&json!({})).is_err());
        assert!(number_from_json(&json!({"exact": {"op": "pow", "args": []}})).is_err());
        assert!(number_from_json(&json!({"exact": {"op": "sqrt", "args": [{"rat": "-1/1"}]}})).is_err());
    }
}
