//! JSON scene documents.
//!
//! Schema version 1:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "backend": "exact",
//!   "params": { "a": "1", "b": "2", "c": "3", "t": "1/2" },
//!   "points": { "A": ["1", "1"], ... },
//!   "lines": { "gwsLine": ["5", "5", "2"], ... },
//!   "circles": { "S": ["14/5", "-2", "0"], ... },
//!   "flags": ["secant_tangent:A"]
//! }
//! ```
//!
//! Every number is a string. Exact values use the canonical `p/q` form (or
//! `p` for integers); float values use the shortest decimal that reads back
//! to the same `f64`. Lines are `[a, b, c]` for `ax + by + c = 0`; circles are
//! `[d, e, f]` for `x² + y² + dx + ey + f = 0`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use simson_core::simson::{Params, Scene, CIRCLE_NAMES, LINE_NAMES, POINT_NAMES};
use simson_core::{Circle, Flag, GeomError, Line, NumericError, Point, Scalar, SceneError};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDocument {
    pub schema_version: u32,
    pub backend: String,
    pub params: BTreeMap<String, String>,
    pub points: BTreeMap<String, [String; 2]>,
    pub lines: BTreeMap<String, [String; 3]>,
    pub circles: BTreeMap<String, [String; 3]>,
    pub flags: Vec<String>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error("document backend is {found:?}, expected {expected:?}")]
    BackendMismatch { expected: String, found: String },
    #[error("missing {kind} {name:?}")]
    Missing { kind: &'static str, name: String },
    #[error("unexpected {kind} {name:?}")]
    Unexpected { kind: &'static str, name: String },
    #[error("{name}: {source}")]
    Number { name: String, source: NumericError },
    #[error("{name}: {source}")]
    Geometry { name: String, source: GeomError },
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Flag(#[from] simson_core::simson::UnknownFlag),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn strings<S: Scalar, const N: usize>(values: [&S; N]) -> [String; N] {
    values.map(ToString::to_string)
}

impl SceneDocument {
    pub fn from_scene<S: Scalar>(scene: &Scene<S>) -> Self {
        let p = &scene.params;
        let params = [("a", &p.a), ("b", &p.b), ("c", &p.c), ("t", &p.t)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let points = scene
            .points()
            .into_iter()
            .map(|(name, pt)| (name.to_string(), strings([&pt.x, &pt.y])))
            .collect();
        let lines = scene
            .lines()
            .into_iter()
            .map(|(name, l)| (name.to_string(), strings([&l.a, &l.b, &l.c])))
            .collect();
        let circles = scene
            .circles()
            .into_iter()
            .map(|(name, c)| (name.to_string(), strings([&c.d, &c.e, &c.f])))
            .collect();
        SceneDocument {
            schema_version: SCHEMA_VERSION,
            backend: S::BACKEND.as_str().to_string(),
            params,
            points,
            lines,
            circles,
            flags: scene.flags.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the scene. Values are read back as stored, not recomputed.
    pub fn to_scene<S: Scalar>(&self, ctx: &S::Context) -> Result<Scene<S>, DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::SchemaVersion(self.schema_version));
        }
        let expected = S::BACKEND.as_str();
        if self.backend != expected {
            return Err(DocumentError::BackendMismatch {
                expected: expected.to_string(),
                found: self.backend.clone(),
            });
        }
        let num = |name: &str, text: &str| {
            S::parse(text, ctx).map_err(|source| DocumentError::Number {
                name: name.to_string(),
                source,
            })
        };
        check_names("param", self.params.keys(), &["a", "b", "c", "t"])?;
        check_names("point", self.points.keys(), &POINT_NAMES)?;
        check_names("line", self.lines.keys(), &LINE_NAMES)?;
        check_names("circle", self.circles.keys(), &CIRCLE_NAMES)?;

        let param = |k: &str| num(k, &self.params[k]);
        let params = Params::new(param("a")?, param("b")?, param("c")?, param("t")?)?;

        let point = |name: &str| -> Result<Point<S>, DocumentError> {
            let [x, y] = &self.points[name];
            Ok(Point::new(num(name, x)?, num(name, y)?))
        };
        let line = |name: &str| -> Result<Line<S>, DocumentError> {
            let [a, b, c] = &self.lines[name];
            Line::new(num(name, a)?, num(name, b)?, num(name, c)?).map_err(|source| {
                DocumentError::Geometry {
                    name: name.to_string(),
                    source,
                }
            })
        };
        let circle = |name: &str| -> Result<Circle<S>, DocumentError> {
            let [d, e, f] = &self.circles[name];
            Circle::new(num(name, d)?, num(name, e)?, num(name, f)?).map_err(|source| {
                DocumentError::Geometry {
                    name: name.to_string(),
                    source,
                }
            })
        };
        let flags = self
            .flags
            .iter()
            .map(|f| f.parse::<Flag>())
            .collect::<Result<Vec<_>, _>>()?;

        Ok(Scene {
            params,
            j: point("J")?,
            o: point("O")?,
            a: point("A")?,
            b: point("B")?,
            c: point("C")?,
            h: point("H")?,
            q: point("Q")?,
            k: point("K")?,
            a0: point("A0")?,
            b0: point("B0")?,
            c0: point("C0")?,
            x: point("X")?,
            y: point("Y")?,
            z: point("Z")?,
            l: point("L")?,
            m: point("M")?,
            n: point("N")?,
            side_bc: line("sideBC")?,
            side_ca: line("sideCA")?,
            side_ab: line("sideAB")?,
            alt_a: line("altA")?,
            alt_b: line("altB")?,
            alt_c: line("altC")?,
            gws: line("gwsLine")?,
            side_b0c0: line("sideB0C0")?,
            side_c0a0: line("sideC0A0")?,
            side_a0b0: line("sideA0B0")?,
            sigma: circle("Sigma")?,
            sigma0: circle("Sigma0")?,
            hagge: circle("S")?,
            circle_a: circle("cA")?,
            circle_b: circle("cB")?,
            circle_c: circle("cC")?,
            flags,
        })
    }
}

fn check_names<'a>(
    kind: &'static str,
    present: impl Iterator<Item = &'a String> + Clone,
    expected: &[&str],
) -> Result<(), DocumentError> {
    if let Some(name) = expected.iter().find(|n| !present.clone().any(|p| p == *n)) {
        return Err(DocumentError::Missing {
            kind,
            name: name.to_string(),
        });
    }
    if let Some(name) = present.clone().find(|p| !expected.contains(&p.as_str())) {
        return Err(DocumentError::Unexpected {
            kind,
            name: name.clone(),
        });
    }
    Ok(())
}
