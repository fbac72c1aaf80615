//! JSON encodings for scenes and construction outputs.
//!
//! Exact rationals serialize as strings (`"-1/2"`, integers as `"3"`) so
//! fixtures survive round-trips without precision loss; doubles serialize
//! as JSON numbers. A scene document picks its backend explicitly:
//!
//! ```json
//! {
//!   "triangle": {"params": ["0", "1", "-1"]},
//!   "P": {"k": "1/2"},
//!   "D": ["0", "1/2"],
//!   "backend": "exact"
//! }
//! ```
//!
//! `triangle` takes either `params` or `vertices`, `P` either a point or
//! `{"k": k}`, and exactly one of `D` or `K` must be present. The exact
//! backend accepts integers and `"p/q"` strings only; floating-point
//! literals are a backend mismatch.

use crate::construction::{
    AnyScene, ConstructionOutput, Generator, Scene, TriangleParams, TriangleSpec,
};
use crate::geom::{Circle, Point};
use crate::scalar::{Rat, Scalar};
use num_bigint::BigInt;
use serde_json::{Map, Value};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SceneParseError {
    #[error("malformed JSON: {0}")]
    BadJson(String),
    #[error("scene is underspecified: {0}")]
    Underspecified(&'static str),
    #[error("scene is overspecified: {0}")]
    Overspecified(&'static str),
    #[error("value not usable under the exact backend: {0}")]
    BackendMismatch(String),
    #[error("invalid number: {0}")]
    BadNumber(String),
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("invalid scene: {0}")]
    Invalid(&'static str),
}

impl SceneParseError {
    /// Stable machine-readable code for CLI consumers.
    pub fn code(&self) -> &'static str {
        match self {
            SceneParseError::BadJson(_) => "SCENE_BAD_JSON",
            SceneParseError::Underspecified(_) => "SCENE_UNDERSPECIFIED",
            SceneParseError::Overspecified(_) => "SCENE_OVERSPECIFIED",
            SceneParseError::BackendMismatch(_) => "SCENE_BACKEND_MISMATCH",
            SceneParseError::BadNumber(_) => "SCENE_BAD_NUMBER",
            SceneParseError::DegenerateTriangle => "SCENE_DEGENERATE_TRIANGLE",
            SceneParseError::Invalid(_) => "SCENE_INVALID",
        }
    }
}

/// `"p"` for integers, `"p/q"` otherwise; the denominator is always
/// positive so the sign sits on the numerator.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` with arbitrary-precision integers.
pub fn parse_rat(s: &str) -> Result<Rat, SceneParseError> {
    let bad = || SceneParseError::BadNumber(s.to_string());
    let mut parts = s.splitn(2, '/');
    let numer = BigInt::from_str(parts.next().ok_or_else(bad)?.trim()).map_err(|_| bad())?;
    let denom = match parts.next() {
        Some(d) => BigInt::from_str(d.trim()).map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// Scalar types that know their JSON representation.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, SceneParseError>;
}

impl JsonScalar for Rat {
    fn to_json(&self) -> Value {
        Value::String(rat_to_string(self))
    }

    fn from_json(v: &Value) -> Result<Self, SceneParseError> {
        match v {
            Value::String(s) => parse_rat(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Rat::from_integer(BigInt::from(i)))
                } else if let Some(u) = n.as_u64() {
                    Ok(Rat::from_integer(BigInt::from(u)))
                } else {
                    Err(SceneParseError::BackendMismatch(format!(
                        "{n} is not an integer; use a \"p/q\" string for exact rationals"
                    )))
                }
            }
            other => Err(SceneParseError::BadNumber(other.to_string())),
        }
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self, SceneParseError> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| SceneParseError::BadNumber(n.to_string())),
            Value::String(s) => Ok(parse_rat(s)?.to_f64()),
            other => Err(SceneParseError::BadNumber(other.to_string())),
        }
    }
}

pub fn point_to_value<S: JsonScalar>(p: &Point<S>) -> Value {
    Value::Array(vec![p.x.to_json(), p.y.to_json()])
}

pub fn point_from_value<S: JsonScalar>(v: &Value) -> Result<Point<S>, SceneParseError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or(SceneParseError::Invalid("a point must be a [x, y] array"))?;
    Ok(Point::new(S::from_json(&arr[0])?, S::from_json(&arr[1])?))
}

pub fn circle_to_value<S: JsonScalar>(c: &Circle<S>) -> Value {
    let mut obj = Map::new();
    obj.insert("g".into(), c.g.to_json());
    obj.insert("f".into(), c.f.to_json());
    obj.insert("t".into(), c.t.to_json());
    obj.insert("center".into(), point_to_value(&c.center()));
    obj.insert("r2".into(), c.radius_sq().to_json());
    Value::Object(obj)
}

pub fn circle_from_value<S: JsonScalar>(v: &Value) -> Result<Circle<S>, SceneParseError> {
    let obj = v
        .as_object()
        .ok_or(SceneParseError::Invalid("a circle must be an object"))?;
    let field = |name: &'static str| {
        obj.get(name)
            .ok_or(SceneParseError::Underspecified("circle needs g, f and t"))
    };
    Ok(Circle::new(
        S::from_json(field("g")?)?,
        S::from_json(field("f")?)?,
        S::from_json(field("t")?)?,
    ))
}

pub fn scene_to_value(scene: &AnyScene) -> Value {
    match scene {
        AnyScene::Exact(s) => typed_scene_to_value(s, "exact"),
        AnyScene::Double(s) => typed_scene_to_value(s, "double"),
    }
}

fn typed_scene_to_value<S: JsonScalar>(scene: &Scene<S>, backend: &str) -> Value {
    let mut root = Map::new();
    let mut triangle = Map::new();
    match &scene.triangle {
        TriangleSpec::Params(params) => {
            triangle.insert(
                "params".into(),
                Value::Array(params.values().iter().map(JsonScalar::to_json).collect()),
            );
        }
        TriangleSpec::Vertices(vs) => {
            triangle.insert(
                "vertices".into(),
                Value::Array(vs.iter().map(point_to_value).collect()),
            );
        }
    }
    root.insert("triangle".into(), Value::Object(triangle));
    root.insert("P".into(), point_to_value(&scene.p));
    match &scene.generator {
        Generator::D(d) => root.insert("D".into(), point_to_value(d)),
        Generator::K(k) => root.insert("K".into(), point_to_value(k)),
    };
    root.insert("backend".into(), Value::String(backend.into()));
    Value::Object(root)
}

pub fn scene_from_str(text: &str) -> Result<AnyScene, SceneParseError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| SceneParseError::BadJson(e.to_string()))?;
    scene_from_value(&value)
}

pub fn scene_from_value(value: &Value) -> Result<AnyScene, SceneParseError> {
    let root = value
        .as_object()
        .ok_or(SceneParseError::Invalid("scene must be a JSON object"))?;
    let backend = root
        .get("backend")
        .ok_or(SceneParseError::Underspecified("missing \"backend\""))?
        .as_str()
        .ok_or(SceneParseError::Invalid("\"backend\" must be a string"))?;
    match backend {
        "exact" => Ok(AnyScene::Exact(typed_scene_from_parts::<Rat>(root)?)),
        "double" => Ok(AnyScene::Double(typed_scene_from_parts::<f64>(root)?)),
        _ => Err(SceneParseError::Invalid(
            "\"backend\" must be \"exact\" or \"double\"",
        )),
    }
}

fn typed_scene_from_parts<S: JsonScalar>(
    root: &Map<String, Value>,
) -> Result<Scene<S>, SceneParseError> {
    let triangle_value = root
        .get("triangle")
        .ok_or(SceneParseError::Underspecified("missing \"triangle\""))?
        .as_object()
        .ok_or(SceneParseError::Invalid("\"triangle\" must be an object"))?;
    let triangle =
        match (triangle_value.get("params"), triangle_value.get("vertices")) {
            (Some(_), Some(_)) => {
                return Err(SceneParseError::Overspecified(
                    "triangle takes \"params\" or \"vertices\", not both",
                ))
            }
            (Some(params), None) => {
                let arr = params
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or(SceneParseError::Invalid("\"params\" must be [a, b, c]"))?;
                let a = S::from_json(&arr[0])?;
                let b = S::from_json(&arr[1])?;
                let c = S::from_json(&arr[2])?;
                TriangleSpec::Params(
                    TriangleParams::new(a, b, c)
                        .map_err(|_| SceneParseError::DegenerateTriangle)?,
                )
            }
            (None, Some(vertices)) => {
                let arr = vertices.as_array().filter(|a| a.len() == 3).ok_or(
                    SceneParseError::Invalid("\"vertices\" must be three [x, y] points"),
                )?;
                TriangleSpec::Vertices([
                    point_from_value(&arr[0])?,
                    point_from_value(&arr[1])?,
                    point_from_value(&arr[2])?,
                ])
            }
            (None, None) => {
                return Err(SceneParseError::Underspecified(
                    "triangle needs \"params\" or \"vertices\"",
                ))
            }
        };

    let p_value = root
        .get("P")
        .ok_or(SceneParseError::Underspecified("missing \"P\""))?;
    let p = match p_value {
        Value::Object(obj) => {
            let k = obj
                .get("k")
                .ok_or(SceneParseError::Underspecified("\"P\" object needs \"k\""))?;
            Point::new(-S::from_json(k)?, S::zero())
        }
        other => point_from_value(other)?,
    };

    let generator = match (root.get("D"), root.get("K")) {
        (Some(_), Some(_)) => {
            return Err(SceneParseError::Overspecified(
                "give \"D\" or \"K\", not both",
            ))
        }
        (Some(d), None) => Generator::D(point_from_value(d)?),
        (None, Some(k)) => Generator::K(point_from_value(k)?),
        (None, None) => {
            return Err(SceneParseError::Underspecified(
                "exactly one of \"D\" or \"K\" is required",
            ))
        }
    };

    let scene = Scene {
        triangle,
        p,
        generator,
    };
    // Reject plainly degenerate triangles at the boundary.
    scene
        .vertices()
        .map_err(|_| SceneParseError::DegenerateTriangle)?;
    Ok(scene)
}

/// Serializes a construction output. Uses the traditional point labels of
/// the configuration: vertices A B C, chord ends E F G, special points
/// U V W, diagonal midpoints Uprime Vprime Wprime.
pub fn output_to_value<S: JsonScalar>(out: &ConstructionOutput<S>) -> Value {
    let mut root = Map::new();
    root.insert("path".into(), Value::String(out.path.as_str().into()));
    root.insert("backend".into(), Value::String(S::BACKEND.to_string()));
    let labels = [
        ("A", &out.vertices[0]),
        ("B", &out.vertices[1]),
        ("C", &out.vertices[2]),
        ("O", &out.circumcenter),
        ("P", &out.p),
        ("Q", &out.q),
        ("D", &out.d),
        ("K", &out.special_center),
        ("E", &out.chord_ends[0]),
        ("F", &out.chord_ends[1]),
        ("G", &out.chord_ends[2]),
        ("U", &out.special_points[0]),
        ("V", &out.special_points[1]),
        ("W", &out.special_points[2]),
        ("Uprime", &out.chord_midpoints[0]),
        ("Vprime", &out.chord_midpoints[1]),
        ("Wprime", &out.chord_midpoints[2]),
    ];
    for (name, point) in labels {
        root.insert(name.into(), point_to_value(point));
    }
    root.insert("circumcircle".into(), circle_to_value(&out.circumcircle));
    root.insert(
        "specialCircle".into(),
        out.special_circle
            .as_ref()
            .map(circle_to_value)
            .unwrap_or(Value::Null),
    );
    root.insert(
        "midpointCircle".into(),
        out.midpoint_circle
            .as_ref()
            .map(circle_to_value)
            .unwrap_or(Value::Null),
    );
    let mut flags = Map::new();
    flags.insert(
        "tangentChords".into(),
        Value::Array(
            out.flags
                .tangent_chords
                .iter()
                .map(|b| Value::Bool(*b))
                .collect(),
        ),
    );
    flags.insert(
        "dAtCircumcenter".into(),
        Value::Bool(out.flags.d_at_circumcenter),
    );
    flags.insert("dOnSideline".into(), Value::Bool(out.flags.d_on_sideline));
    flags.insert("pOnSideline".into(), Value::Bool(out.flags.p_on_sideline));
    flags.insert("degenerate".into(), Value::Bool(out.flags.degenerate()));
    root.insert("flags".into(), Value::Object(flags));
    Value::Object(root)
}

/// Pretty-printed JSON with a trailing newline; the byte-stable format all
/// command output uses.
pub fn to_json_string(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "-1/2", "22/7", "-64"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        // Reduction and sign normalization happen on parse.
        assert_eq!(rat_to_string(&parse_rat("4/-8").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
    }

    #[test]
    fn exact_backend_rejects_float_literals() {
        let err = Rat::from_json(&serde_json::json!(0.5)).unwrap_err();
        assert_eq!(err.code(), "SCENE_BACKEND_MISMATCH");
        assert_eq!(Rat::from_json(&serde_json::json!(3)).unwrap(), rat(3, 1));
    }

    #[test]
    fn scene_document_round_trips() {
        let text = r#"{
            "triangle": {"params": ["0", "1", "-1"]},
            "P": {"k": "1/2"},
            "D": ["0", "1/2"],
            "backend": "exact"
        }"#;
        let scene = scene_from_str(text).unwrap();
        let json = to_json_string(&scene_to_value(&scene));
        let again = scene_from_str(&json).unwrap();
        assert_eq!(scene, again);
        match scene {
            AnyScene::Exact(s) => {
                assert_eq!(s.p, Point::new(rat(-1, 2), rat(0, 1)));
                assert_eq!(s.canonical_k().unwrap(), rat(1, 2));
            }
            AnyScene::Double(_) => panic!("expected exact backend"),
        }
    }

    #[test]
    fn missing_generator_is_underspecified() {
        let text = r#"{
            "triangle": {"params": [0, 1, -1]},
            "P": {"k": "1/2"},
            "backend": "exact"
        }"#;
        let err = scene_from_str(text).unwrap_err();
        assert_eq!(err.code(), "SCENE_UNDERSPECIFIED");
    }

    #[test]
    fn both_generators_is_overspecified() {
        let text = r#"{
            "triangle": {"params": [0, 1, -1]},
            "P": {"k": 0},
            "D": [0, "1/2"],
            "K": [0, "1/2"],
            "backend": "exact"
        }"#;
        assert_eq!(
            scene_from_str(text).unwrap_err().code(),
            "SCENE_OVERSPECIFIED"
        );
    }

    #[test]
    fn double_scene_accepts_floats_and_fractions() {
        let text = r#"{
            "triangle": {"vertices": [[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]]},
            "P": [1.0, 1.0],
            "D": ["5/2", 0.5],
            "backend": "double"
        }"#;
        match scene_from_str(text).unwrap() {
            AnyScene::Double(s) => {
                assert_eq!(
                    s.generator.resolve_d(&s.p, &Point::origin()),
                    Point::new(2.5, 0.5)
                );
            }
            AnyScene::Exact(_) => panic!("expected double backend"),
        }
    }

    #[test]
    fn degenerate_triangle_rejected_at_parse() {
        let text = r#"{
            "triangle": {"params": [1, 1, 2]},
            "P": {"k": 0},
            "D": [0, 1],
            "backend": "exact"
        }"#;
        assert_eq!(
            scene_from_str(text).unwrap_err().code(),
            "SCENE_DEGENERATE_TRIANGLE"
        );
    }

    #[test]
    fn construct_output_serializes_exact_values() {
        use crate::construction::{construct, PathKind};
        let scene = match scene_from_str(
            r#"{
                "triangle": {"params": [0, 1, -1]},
                "P": {"k": "1/2"},
                "D": [0, "1/2"],
                "backend": "exact"
            }"#,
        )
        .unwrap()
        {
            AnyScene::Exact(s) => s,
            _ => unreachable!(),
        };
        let out = construct(&scene, PathKind::ClosedForm).unwrap();
        let value = output_to_value(&out);
        assert_eq!(value["U"], serde_json::json!(["-1/2", "0"]));
        assert_eq!(value["specialCircle"]["g"], serde_json::json!("1/2"));
        assert_eq!(value["specialCircle"]["f"], serde_json::json!("-1/2"));
        assert_eq!(value["specialCircle"]["t"], serde_json::json!("1/4"));
        assert_eq!(
            value["specialCircle"]["center"],
            serde_json::json!(["-1/2", "1/2"])
        );
        // Full exact round-trip of serialized points and circles.
        let u: Point<Rat> = point_from_value(&value["U"]).unwrap();
        assert_eq!(u, out.special_points[0]);
        let circle: crate::geom::Circle<Rat> = circle_from_value(&value["specialCircle"]).unwrap();
        assert_eq!(Some(circle), out.special_circle);
    }
}
