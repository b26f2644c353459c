//! Exact construction and verification of oblique Wallace-Simson lines.
//!
//! Given vertex parameters `a, b, c` and a similarity parameter `t`,
//! [`simson::build_scene`] constructs the triangle on the circle
//! `x² + y² − 2x = 0`, its image under the direct similarity about
//! `J = (0, 0)`, the circle `S` centred at `Q` through `J` and `H`, the
//! points `X, Y, Z` on the altitudes and the points `L, M, N` on the sides.
//! [`verify::run_checks`] then confirms every incidence as an identity.
//!
//! ```
//! use simson_core::numeric::Rational;
//! use simson_core::simson::{build_scene, Params};
//! use simson_core::verify::run_checks;
//!
//! let r = |s: &str| s.parse::<Rational>().unwrap();
//! let params = Params::new(r("1"), r("2"), r("3"), r("1/2")).unwrap();
//! let scene = build_scene(&params).unwrap();
//! assert_eq!(scene.q.to_string(), "(-7/5, 1)");
//! assert!(run_checks(&scene).all_pass());
//! ```

pub mod geom;
pub mod numeric;
pub mod simson;
pub mod verify;

pub use geom::{Circle, DirectedTan, GeomError, Line, Point};
pub use numeric::{Backend, Float, NumericError, Rational, Scalar, Tolerance};
pub use simson::{build_scene, Flag, Params, Scene, SceneError, Vertex};
