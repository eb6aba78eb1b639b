//! JSON instance files, random instance families and SVG rendering.
//!
//! Coordinates are exact. Numbers are read from their decimal text, and a
//! string holding a decimal or a fraction `p/q` is accepted too. Output uses
//! plain decimals whenever the value has a finite expansion.

mod generate;
mod svg;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::geometry::{ConvexPolygon, Disk, GeometricObject, Point, Polyline, Rational, Segment};
use crate::lift::{normalize_instance, Instance, LiftError, NormalizationReport};

pub use generate::{generate, Family, GenParams};
pub use svg::render_svg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("schema error at line {line}, column {column}: {message}")]
    Schema { line: usize, column: usize, message: String },
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

impl From<LiftError> for InstanceError {
    fn from(e: LiftError) -> Self {
        InstanceError::Degenerate(match e {
            LiftError::DegenerateConfiguration(m) | LiftError::PointOnObject(m) => m,
        })
    }
}

/// Exact number as it appears in a file.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Num(Rational);

fn digits(s: &str) -> Option<BigInt> {
    (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok()).flatten()
}

/// Exact value of a finite decimal literal such as `-12.5e-3`.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    if exp.abs() > 1000 {
        return None;
    }
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let whole = digits(&format!("{}{frac}", if int.is_empty() { "0" } else { int }))?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(whole * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(whole, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

fn parse_exact(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (BigInt::from_str(p.trim()).ok()?, BigInt::from_str(q.trim()).ok()?);
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => parse_decimal(text),
    }
}

/// Decimal text when the expansion is finite.
pub fn format_decimal(r: &Rational) -> Option<String> {
    let mut den = r.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    while den.is_multiple_of(&two) {
        den /= &two;
        twos += 1;
    }
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = r.numer() * num_traits::pow(BigInt::from(10), places) / r.denom();
    let neg = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    if places > 0 {
        if s.len() <= places {
            s = format!("{}{s}", "0".repeat(places + 1 - s.len()));
        }
        s.insert(s.len() - places, '.');
    }
    Some(if neg { format!("-{s}") } else { s })
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match format_decimal(&self.0) {
            Some(text) => serde_json::Number::from_str(&text).map_err(serde::ser::Error::custom)?.serialize(ser),
            None => ser.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom())),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let parsed = match &v {
            serde_json::Value::Number(n) => parse_decimal(&n.to_string()),
            serde_json::Value::String(s) => parse_exact(s),
            _ => None,
        };
        parsed.map(Num).ok_or_else(|| de::Error::custom(format!("expected a finite decimal number, found {v}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Coord(Num, Num);

impl From<&Point> for Coord {
    fn from(p: &Point) -> Self {
        Coord(Num(p.x.clone()), Num(p.y.clone()))
    }
}

impl From<Coord> for Point {
    fn from(c: Coord) -> Self {
        Point::new(c.0 .0, c.1 .0)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum ObjRepr {
    Disk { center: Coord, radius: Num },
    Segment { a: Coord, b: Coord },
    Polygon { vertices: Vec<Coord>, filled: bool },
    Polyline { vertices: Vec<Coord> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ObjRepr", into = "ObjRepr")]
struct Obj(GeometricObject);

impl TryFrom<ObjRepr> for Obj {
    type Error = String;

    fn try_from(r: ObjRepr) -> Result<Self, String> {
        let pts = |v: Vec<Coord>| v.into_iter().map(Point::from).collect::<Vec<_>>();
        Ok(Obj(match r {
            ObjRepr::Disk { center, radius } => {
                if !radius.0.is_positive() {
                    return Err(format!("radius must be positive, got {}", radius.0));
                }
                GeometricObject::Disk(Disk::new(center.into(), radius.0))
            }
            ObjRepr::Segment { a, b } => GeometricObject::Segment(Segment::new(a.into(), b.into())),
            ObjRepr::Polygon { vertices, filled } => {
                GeometricObject::Polygon(ConvexPolygon::new(pts(vertices), filled).map_err(|e| e.to_string())?)
            }
            ObjRepr::Polyline { vertices } => {
                GeometricObject::Polyline(Polyline::new(pts(vertices)).map_err(|e| e.to_string())?)
            }
        }))
    }
}

impl From<Obj> for ObjRepr {
    fn from(o: Obj) -> Self {
        let pts = |v: &[Point]| v.iter().map(Coord::from).collect();
        match &o.0 {
            GeometricObject::Disk(d) => ObjRepr::Disk { center: (&d.center).into(), radius: Num(d.radius.clone()) },
            GeometricObject::Segment(s) => ObjRepr::Segment { a: (&s.a).into(), b: (&s.b).into() },
            GeometricObject::Polygon(p) => ObjRepr::Polygon { vertices: pts(&p.vertices), filled: p.filled },
            GeometricObject::Polyline(p) => ObjRepr::Polyline { vertices: pts(&p.vertices) },
        }
    }
}

/// Free-form provenance of a file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    s: Coord,
    t: Coord,
    objects: Vec<Obj>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

/// Raw contents of an instance file, before normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub s: Point,
    pub t: Point,
    pub objects: Vec<GeometricObject>,
    pub metadata: Option<Metadata>,
}

impl InstanceFile {
    pub fn normalize(&self) -> Result<(Instance, NormalizationReport), InstanceError> {
        Ok(normalize_instance(self.objects.clone(), self.s.clone(), self.t.clone())?)
    }
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile { s: inst.s.clone(), t: inst.t.clone(), objects: inst.objects.clone(), metadata: None }
    }
}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub file: InstanceFile,
    pub instance: Instance,
    pub report: NormalizationReport,
}

/// Read a file without normalizing it.
pub fn parse_file(text: &str) -> Result<InstanceFile, InstanceError> {
    let repr: FileRepr = serde_json::from_str(text).map_err(|e| InstanceError::Schema {
        line: e.line(),
        column: e.column(),
        message: {
            // serde_json appends the position to the message; keep it separate
            let full = e.to_string();
            match full.rfind(" at line ") {
                Some(i) => full[..i].to_string(),
                None => full,
            }
        },
    })?;
    Ok(InstanceFile {
        s: repr.s.into(),
        t: repr.t.into(),
        objects: repr.objects.into_iter().map(|o| o.0).collect(),
        metadata: repr.metadata,
    })
}

/// Read and normalize an instance file.
pub fn parse_instance(text: &str) -> Result<Parsed, InstanceError> {
    let file = parse_file(text)?;
    let (instance, report) = file.normalize()?;
    Ok(Parsed { file, instance, report })
}

/// Pretty JSON with exact coordinates.
pub fn serialize_instance(file: &InstanceFile) -> String {
    let repr = FileRepr {
        s: (&file.s).into(),
        t: (&file.t).into(),
        objects: file.objects.iter().cloned().map(Obj).collect(),
        metadata: file.metadata.clone(),
    };
    let mut out = serde_json::to_string_pretty(&repr).expect("instance serializes");
    out.push('\n');
    out
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_instance(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    const MINIMAL: &str = r#"{"s": [0, 0], "t": [10, 0], "objects": [{"type": "disk", "center": [5, 3], "radius": 1}]}"#;

    #[test]
    fn minimal_file() {
        let p = parse_instance(MINIMAL).unwrap();
        assert_eq!(p.instance.n(), 1);
    }

    #[test]
    fn negative_radius_is_a_schema_error() {
        let text = MINIMAL.replace("\"radius\": 1", "\"radius\": -1");
        assert!(matches!(parse_instance(&text), Err(InstanceError::Schema { line: 1, .. })));
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_instance("{\n  \"s\": [0, 0],\n  \"t\": [1 0]\n}").unwrap_err();
        assert!(matches!(err, InstanceError::Schema { line: 3, column: 11, .. }), "{err}");
    }

    #[test]
    fn object_containing_s_is_reported() {
        let text = MINIMAL.replace("[5, 3], \"radius\": 1", "[0, 1], \"radius\": 2");
        let p = parse_instance(&text).unwrap();
        assert_eq!(p.instance.n(), 0);
        assert_eq!(p.report.trivial_separators, vec![0]);
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.1"), Some(ratio(1, 10)));
        assert_eq!(parse_decimal("-2.5e-1"), Some(ratio(-1, 4)));
        assert_eq!(parse_decimal("12e2"), Some(ratio(1200, 1)));
        assert_eq!(parse_decimal("."), None);
        assert_eq!(parse_decimal("1e99999"), None);
        assert_eq!(format_decimal(&ratio(-1, 40)).as_deref(), Some("-0.025"));
        assert_eq!(format_decimal(&ratio(7, 1)).as_deref(), Some("7"));
        assert_eq!(format_decimal(&ratio(1, 3)), None);
    }

    #[test]
    fn round_trip_keeps_thirds() {
        let text = r#"{"s": ["1/3", 0], "t": [10, 0.25], "objects": [{"type": "segment", "a": [1, 1], "b": ["2/7", 5]}]}"#;
        let f = parse_file(text).unwrap();
        let again = parse_file(&serialize_instance(&f)).unwrap();
        assert_eq!(f, again);
        assert_eq!(again.s.x, ratio(1, 3));
    }

    #[test]
    fn unknown_top_level_field() {
        let text = MINIMAL.replace("\"objects\"", "\"extra\": 1, \"objects\"");
        assert!(matches!(parse_file(&text), Err(InstanceError::Schema { .. })));
    }
}
