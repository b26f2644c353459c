//! Construction of the oblique Wallace-Simson configuration.
//!
//! Everything lives in the canonical frame: `J = (0, 0)` on the circumcircle
//! `Σ: x² + y² − 2x = 0` with centre `O = (1, 0)`. A vertex with parameter
//! `p` is the second point where the line `y = p·x` meets `Σ`. The parameter
//! `t` selects the direct similarity about `J` with matrix
//! `[[1/2, −t], [t, 1/2]]`, which sends the orthocentre `H` to `Q`.
//!
//! Orthocentre and altitudes are always built from perpendiculars and
//! intersections. Closed-form coordinates are only used by the audit in
//! [`crate::verify`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geom::{
    circle_center_through, circle_through3, collinear3, intersect_lines, line_through,
    perpendicular_through, reflect_in_line, second_circle_circle, second_line_circle, Circle,
    GeomError, Line, Point, SecondPoint,
};
use crate::numeric::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SceneError {
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("orthocentre coincides with J")]
    JEqualsH,
    #[error("L, M, N are not collinear")]
    NotCollinear,
    #[error("L, M, N all coincide")]
    AllCoincident,
    #[error("point is not on the circumcircle")]
    NotOnCircumcircle,
    #[error("construction invariant violated: {0}")]
    Invariant(&'static str),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type Result<T, E = SceneError> = std::result::Result<T, E>;

/// Triangle vertex. Also indexes the opposite side and the matching
/// point among X/Y/Z and L/M/N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    /// The two other vertices in cyclic order (B, C for A).
    pub fn others(self) -> (Vertex, Vertex) {
        match self {
            Vertex::A => (Vertex::B, Vertex::C),
            Vertex::B => (Vertex::C, Vertex::A),
            Vertex::C => (Vertex::A, Vertex::B),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Vertex::A => "A",
            Vertex::B => "B",
            Vertex::C => "C",
        }
    }

    pub fn param_name(self) -> &'static str {
        match self {
            Vertex::A => "a",
            Vertex::B => "b",
            Vertex::C => "c",
        }
    }

    /// Name of the matching point on the altitude (X, Y, Z).
    pub fn altitude_point(self) -> &'static str {
        match self {
            Vertex::A => "X",
            Vertex::B => "Y",
            Vertex::C => "Z",
        }
    }

    /// Name of the matching point on the opposite side (L, M, N).
    pub fn side_point(self) -> &'static str {
        match self {
            Vertex::A => "L",
            Vertex::B => "M",
            Vertex::C => "N",
        }
    }

    fn from_name(s: &str) -> Option<Vertex> {
        match s {
            "A" | "X" | "L" => Some(Vertex::A),
            "B" | "Y" | "M" => Some(Vertex::B),
            "C" | "Z" | "N" => Some(Vertex::C),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Params<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub t: S,
}

impl<S: Scalar> Params<S> {
    /// Checks that the vertex parameters are pairwise distinct.
    pub fn new(a: S, b: S, c: S, t: S) -> Result<Self> {
        let p = Params { a, b, c, t };
        for v in Vertex::ALL {
            let (u, w) = v.others();
            if p.vertex(u).near(p.vertex(w)) {
                let (u, w) = if u < w { (u, w) } else { (w, u) };
                return Err(SceneError::DegenerateTriangle(format!(
                    "{} = {}",
                    u.param_name(),
                    w.param_name()
                )));
            }
        }
        Ok(p)
    }

    pub fn vertex(&self, v: Vertex) -> &S {
        match v {
            Vertex::A => &self.a,
            Vertex::B => &self.b,
            Vertex::C => &self.c,
        }
    }
}

/// The direct similarity about `J` that maps `H` to `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Similarity<S> {
    pub t: S,
}

impl<S: Scalar> Similarity<S> {
    pub fn new(t: S) -> Self {
        Similarity { t }
    }

    /// `(x/2 − t·y, t·x + y/2)`.
    pub fn apply(&self, p: &Point<S>) -> Point<S> {
        let half = self.t.ratio(1, 2);
        Point::new(
            p.x.clone() * half.clone() - self.t.clone() * p.y.clone(),
            self.t.clone() * p.x.clone() + p.y.clone() * half,
        )
    }

    /// Squared scale factor `(1 + 4t²)/4`.
    pub fn scale2(&self) -> S {
        (self.t.one_like() + self.t.int(4) * self.t.square()) * self.t.ratio(1, 4)
    }
}

pub fn apply_similarity<S: Scalar>(t: &S, p: &Point<S>) -> Point<S> {
    Similarity::new(t.clone()).apply(p)
}

fn origin<S: Scalar>(like: &S) -> Point<S> {
    Point::origin_like(like)
}

pub fn circumcircle<S: Scalar>(like: &S) -> Circle<S> {
    let o = Point::new(like.one_like(), like.zero_like());
    circle_center_through(&o, &origin(like)).expect("unit circumcircle")
}

/// `(2/(1+p²), 2p/(1+p²))`.
pub fn vertex_point<S: Scalar>(p: &S) -> Point<S> {
    let den = p.one_like() + p.square();
    let k = p.int(2).checked_div(&den).expect("1 + p² > 0");
    Point::new(k.clone(), k * p.clone())
}

/// `((1 − 2pt)/(1+p²), (p + 2t)/(1+p²))`.
pub fn image_vertex<S: Scalar>(p: &S, t: &S) -> Point<S> {
    let den = p.one_like() + p.square();
    let two_t = t.int(2) * t.clone();
    let x = p.one_like() - two_t.clone() * p.clone();
    let y = p.clone() + two_t;
    Point::new(
        x.checked_div(&den).expect("1 + p² > 0"),
        y.checked_div(&den).expect("1 + p² > 0"),
    )
}

/// Common point of AA0, BB0, CC0: `(8t²/(1+4t²), 4t/(1+4t²))`.
pub fn perspector_k<S: Scalar>(t: &S) -> Point<S> {
    let t2 = t.square();
    let den = t.one_like() + t.int(4) * t2.clone();
    Point::new(
        (t.int(8) * t2).checked_div(&den).expect("1 + 4t² > 0"),
        (t.int(4) * t.clone())
            .checked_div(&den)
            .expect("1 + 4t² > 0"),
    )
}

fn vertices<S: Scalar>(params: &Params<S>) -> [Point<S>; 3] {
    Vertex::ALL.map(|v| vertex_point(params.vertex(v)))
}

/// Altitude from `vertex`: the perpendicular from it to the opposite side.
pub fn altitude_line<S: Scalar>(vertex: Vertex, params: &Params<S>) -> Result<Line<S>> {
    let (u, w) = vertex.others();
    let side = side_line(params, u, w)?;
    Ok(perpendicular_through(
        &vertex_point(params.vertex(vertex)),
        &side,
    ))
}

fn side_line<S: Scalar>(params: &Params<S>, u: Vertex, w: Vertex) -> Result<Line<S>> {
    line_through(
        &vertex_point(params.vertex(u)),
        &vertex_point(params.vertex(w)),
    )
    .map_err(|_| degenerate(u, w))
}

fn degenerate(u: Vertex, w: Vertex) -> SceneError {
    SceneError::DegenerateTriangle(format!("{} = {}", u.param_name(), w.param_name()))
}

/// Orthocentre as the meet of two altitudes, checked against the third.
pub fn orthocenter_h<S: Scalar>(params: &Params<S>) -> Result<Point<S>> {
    let alt_a = altitude_line(Vertex::A, params)?;
    let alt_b = altitude_line(Vertex::B, params)?;
    let alt_c = altitude_line(Vertex::C, params)?;
    let h = intersect_lines(&alt_a, &alt_b)?;
    if !alt_c.contains(&h) {
        return Err(SceneError::Invariant("altitudes do not concur"));
    }
    Ok(h)
}

/// `(h/2 − k·t, k/2 + h·t)` for `H = (h, k)`: a point on the perpendicular
/// bisector of `JH`.
pub fn q_point<S: Scalar>(h: &Point<S>, t: &S) -> Result<Point<S>> {
    if h.near(&origin(t)) {
        return Err(SceneError::JEqualsH);
    }
    Ok(apply_similarity(t, h))
}

/// Circle with centre at the image vertex, through `J` (and through the
/// original vertex).
pub fn vertex_circle<S: Scalar>(p: &S, t: &S) -> Circle<S> {
    circle_center_through(&image_vertex(p, t), &origin(t))
        .expect("image vertex never coincides with J")
}

/// X (resp. Y, Z): second meet of the altitude with the vertex circle.
pub fn xyz_point<S: Scalar>(vertex: Vertex, params: &Params<S>) -> Result<SecondPoint<S>> {
    let alt = altitude_line(vertex, params)?;
    let p = params.vertex(vertex);
    let circle = vertex_circle(p, &params.t);
    Ok(second_line_circle(&alt, &circle, &vertex_point(p))?)
}

/// Circle through X, Y, Z. Falls back to the circle centred at `q` through
/// `j` when the three points are collinear or coincide; the flag reports it.
pub fn hagge_circle<S: Scalar>(
    xyz: [&Point<S>; 3],
    q: &Point<S>,
    j: &Point<S>,
) -> Result<(Circle<S>, bool)> {
    match circle_through3(xyz[0], xyz[1], xyz[2]) {
        Ok(c) => Ok((c, false)),
        Err(GeomError::CollinearPoints | GeomError::CoincidentPoints) => {
            Ok((circle_center_through(q, j)?, true))
        }
        Err(e) => Err(e.into()),
    }
}

/// L (resp. M, N): second meet of the two vertex circles other than the one
/// at `which`, starting from `J`.
pub fn lmn_point<S: Scalar>(which: Vertex, params: &Params<S>) -> Result<SecondPoint<S>> {
    let (u, w) = which.others();
    let c1 = vertex_circle(params.vertex(u), &params.t);
    let c2 = vertex_circle(params.vertex(w), &params.t);
    Ok(second_circle_circle(&c1, &c2, &origin(&params.t))?)
}

/// Line through the first distinct pair of `points`, after checking that all
/// of them are collinear.
fn line_through_all<S: Scalar>(points: &[&Point<S>]) -> Result<Line<S>> {
    let pair = points
        .iter()
        .enumerate()
        .flat_map(|(i, p)| points[i + 1..].iter().map(move |q| (*p, *q)))
        .find(|(p, q)| !p.near(q));
    let Some((p, q)) = pair else {
        return Err(SceneError::AllCoincident);
    };
    if points.iter().any(|r| !collinear3(p, q, r)) {
        return Err(SceneError::NotCollinear);
    }
    Ok(line_through(p, q)?)
}

/// Line LMN. Points equal to `J` (tangent vertex circles) are used last.
pub fn gws_line<S: Scalar>(lmn: [&Point<S>; 3]) -> Result<Line<S>> {
    let j = origin(&lmn[0].x);
    let mut ordered: Vec<&Point<S>> = lmn.iter().copied().filter(|p| !p.near(&j)).collect();
    ordered.extend(lmn.iter().copied().filter(|p| p.near(&j)));
    line_through_all(&ordered)
}

/// Line through the reflections of `j` in the three sides of `pqr`.
pub fn double_simson_line<S: Scalar>(
    j: &Point<S>,
    p: &Point<S>,
    q: &Point<S>,
    r: &Point<S>,
) -> Result<Line<S>> {
    let circle = circle_through3(p, q, r)?;
    if !circle.contains(j) {
        return Err(SceneError::NotOnCircumcircle);
    }
    let reflections = [(q, r), (r, p), (p, q)]
        .map(|(u, w)| line_through(u, w).map(|side| reflect_in_line(j, &side)));
    let [l, m, n] = reflections;
    let (l, m, n) = (l?, m?, n?);
    line_through_all(&[&l, &m, &n])
}

/// Degeneracies and tangencies met while building a scene.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    /// The line from the vertex to its image touches Σ there (K is the vertex).
    SecantTangent(Vertex),
    /// The altitude touches the vertex circle at the vertex (X is the vertex).
    AltitudeTangent(Vertex),
    /// The two vertex circles touch at J (L, M or N is J).
    SidePointAtJ(Vertex),
    /// t = 0, so K is J.
    PerspectorAtJ,
    /// X, Y, Z do not determine a circle; S was built from its centre Q.
    HaggeFromCenter,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::SecantTangent(v) => write!(f, "secant_tangent:{}", v.name()),
            Flag::AltitudeTangent(v) => write!(f, "altitude_tangent:{}", v.name()),
            Flag::SidePointAtJ(v) => write!(f, "at_J:{}", v.side_point()),
            Flag::PerspectorAtJ => f.write_str("at_J:K"),
            Flag::HaggeFromCenter => f.write_str("hagge_from_center"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown scene flag {0:?}")]
pub struct UnknownFlag(pub String);

impl FromStr for Flag {
    type Err = UnknownFlag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || UnknownFlag(s.to_string());
        if s == "at_J:K" {
            return Ok(Flag::PerspectorAtJ);
        }
        if s == "hagge_from_center" {
            return Ok(Flag::HaggeFromCenter);
        }
        let (kind, name) = s.split_once(':').ok_or_else(unknown)?;
        let v = Vertex::from_name(name).ok_or_else(unknown)?;
        match kind {
            "secant_tangent" if name == v.name() => Ok(Flag::SecantTangent(v)),
            "altitude_tangent" if name == v.name() => Ok(Flag::AltitudeTangent(v)),
            "at_J" if name == v.side_point() => Ok(Flag::SidePointAtJ(v)),
            _ => Err(unknown()),
        }
    }
}

/// Every named object of one construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene<S> {
    pub params: Params<S>,

    pub j: Point<S>,
    pub o: Point<S>,
    pub a: Point<S>,
    pub b: Point<S>,
    pub c: Point<S>,
    pub h: Point<S>,
    pub q: Point<S>,
    pub k: Point<S>,
    pub a0: Point<S>,
    pub b0: Point<S>,
    pub c0: Point<S>,
    pub x: Point<S>,
    pub y: Point<S>,
    pub z: Point<S>,
    pub l: Point<S>,
    pub m: Point<S>,
    pub n: Point<S>,

    pub side_bc: Line<S>,
    pub side_ca: Line<S>,
    pub side_ab: Line<S>,
    pub alt_a: Line<S>,
    pub alt_b: Line<S>,
    pub alt_c: Line<S>,
    pub gws: Line<S>,
    pub side_b0c0: Line<S>,
    pub side_c0a0: Line<S>,
    pub side_a0b0: Line<S>,

    pub sigma: Circle<S>,
    pub sigma0: Circle<S>,
    pub hagge: Circle<S>,
    pub circle_a: Circle<S>,
    pub circle_b: Circle<S>,
    pub circle_c: Circle<S>,

    pub flags: Vec<Flag>,
}

pub const POINT_NAMES: [&str; 17] = [
    "J", "O", "A", "B", "C", "H", "Q", "K", "A0", "B0", "C0", "X", "Y", "Z", "L", "M", "N",
];
pub const LINE_NAMES: [&str; 10] = [
    "sideBC", "sideCA", "sideAB", "altA", "altB", "altC", "gwsLine", "sideB0C0", "sideC0A0",
    "sideA0B0",
];
pub const CIRCLE_NAMES: [&str; 6] = ["Sigma", "Sigma0", "S", "cA", "cB", "cC"];

impl<S: Scalar> Scene<S> {
    pub fn vertex(&self, v: Vertex) -> &Point<S> {
        match v {
            Vertex::A => &self.a,
            Vertex::B => &self.b,
            Vertex::C => &self.c,
        }
    }

    pub fn image(&self, v: Vertex) -> &Point<S> {
        match v {
            Vertex::A => &self.a0,
            Vertex::B => &self.b0,
            Vertex::C => &self.c0,
        }
    }

    pub fn altitude_point(&self, v: Vertex) -> &Point<S> {
        match v {
            Vertex::A => &self.x,
            Vertex::B => &self.y,
            Vertex::C => &self.z,
        }
    }

    pub fn side_point(&self, v: Vertex) -> &Point<S> {
        match v {
            Vertex::A => &self.l,
            Vertex::B => &self.m,
            Vertex::C => &self.n,
        }
    }

    /// Side opposite `v`.
    pub fn side(&self, v: Vertex) -> &Line<S> {
        match v {
            Vertex::A => &self.side_bc,
            Vertex::B => &self.side_ca,
            Vertex::C => &self.side_ab,
        }
    }

    pub fn image_side(&self, v: Vertex) -> &Line<S> {
        match v {
            Vertex::A => &self.side_b0c0,
            Vertex::B => &self.side_c0a0,
            Vertex::C => &self.side_a0b0,
        }
    }

    pub fn altitude(&self, v: Vertex) -> &Line<S> {
        match v {
            Vertex::A => &self.alt_a,
            Vertex::B => &self.alt_b,
            Vertex::C => &self.alt_c,
        }
    }

    pub fn vertex_circle(&self, v: Vertex) -> &Circle<S> {
        match v {
            Vertex::A => &self.circle_a,
            Vertex::B => &self.circle_b,
            Vertex::C => &self.circle_c,
        }
    }

    /// Points in [`POINT_NAMES`] order.
    pub fn points(&self) -> [(&'static str, &Point<S>); 17] {
        let p = [
            &self.j, &self.o, &self.a, &self.b, &self.c, &self.h, &self.q, &self.k, &self.a0,
            &self.b0, &self.c0, &self.x, &self.y, &self.z, &self.l, &self.m, &self.n,
        ];
        std::array::from_fn(|i| (POINT_NAMES[i], p[i]))
    }

    pub fn points_mut(&mut self) -> [(&'static str, &mut Point<S>); 17] {
        let p = [
            &mut self.j,
            &mut self.o,
            &mut self.a,
            &mut self.b,
            &mut self.c,
            &mut self.h,
            &mut self.q,
            &mut self.k,
            &mut self.a0,
            &mut self.b0,
            &mut self.c0,
            &mut self.x,
            &mut self.y,
            &mut self.z,
            &mut self.l,
            &mut self.m,
            &mut self.n,
        ];
        let mut names = POINT_NAMES.into_iter();
        p.map(|pt| (names.next().unwrap(), pt))
    }

    /// Lines in [`LINE_NAMES`] order.
    pub fn lines(&self) -> [(&'static str, &Line<S>); 10] {
        let l = [
            &self.side_bc,
            &self.side_ca,
            &self.side_ab,
            &self.alt_a,
            &self.alt_b,
            &self.alt_c,
            &self.gws,
            &self.side_b0c0,
            &self.side_c0a0,
            &self.side_a0b0,
        ];
        std::array::from_fn(|i| (LINE_NAMES[i], l[i]))
    }

    pub fn lines_mut(&mut self) -> [(&'static str, &mut Line<S>); 10] {
        let l = [
            &mut self.side_bc,
            &mut self.side_ca,
            &mut self.side_ab,
            &mut self.alt_a,
            &mut self.alt_b,
            &mut self.alt_c,
            &mut self.gws,
            &mut self.side_b0c0,
            &mut self.side_c0a0,
            &mut self.side_a0b0,
        ];
        let mut names = LINE_NAMES.into_iter();
        l.map(|line| (names.next().unwrap(), line))
    }

    /// Circles in [`CIRCLE_NAMES`] order.
    pub fn circles(&self) -> [(&'static str, &Circle<S>); 6] {
        let c = [
            &self.sigma,
            &self.sigma0,
            &self.hagge,
            &self.circle_a,
            &self.circle_b,
            &self.circle_c,
        ];
        std::array::from_fn(|i| (CIRCLE_NAMES[i], c[i]))
    }

    pub fn circles_mut(&mut self) -> [(&'static str, &mut Circle<S>); 6] {
        let c = [
            &mut self.sigma,
            &mut self.sigma0,
            &mut self.hagge,
            &mut self.circle_a,
            &mut self.circle_b,
            &mut self.circle_c,
        ];
        let mut names = CIRCLE_NAMES.into_iter();
        c.map(|circle| (names.next().unwrap(), circle))
    }
}

fn ensure(cond: bool, what: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(SceneError::Invariant(what))
    }
}

/// Runs the whole construction for one parameter set.
pub fn build_scene<S: Scalar>(params: &Params<S>) -> Result<Scene<S>> {
    let params = Params::new(
        params.a.clone(),
        params.b.clone(),
        params.c.clone(),
        params.t.clone(),
    )?;
    let t = &params.t;
    let j = origin(t);
    let o = Point::new(t.one_like(), t.zero_like());
    let sigma = circumcircle(t);
    let mut flags = Vec::new();

    let [a, b, c] = vertices(&params);
    let side_bc = side_line(&params, Vertex::B, Vertex::C)?;
    let side_ca = side_line(&params, Vertex::C, Vertex::A)?;
    let side_ab = side_line(&params, Vertex::A, Vertex::B)?;
    let alt_a = perpendicular_through(&a, &side_bc);
    let alt_b = perpendicular_through(&b, &side_ca);
    let alt_c = perpendicular_through(&c, &side_ab);

    let h = orthocenter_h(&params)?;
    let q = q_point(&h, t)?;

    let [a0, b0, c0] = Vertex::ALL.map(|v| image_vertex(params.vertex(v), t));
    let k = perspector_k(t);
    if k.near(&j) {
        flags.push(Flag::PerspectorAtJ);
    }
    for (v, p, p0) in [
        (Vertex::A, &a, &a0),
        (Vertex::B, &b, &b0),
        (Vertex::C, &c, &c0),
    ] {
        ensure(sigma.contains(p), "vertex off the circumcircle")?;
        let secant = line_through(p, p0)?;
        let meet = second_line_circle(&secant, &sigma, p)?;
        ensure(meet.point.near(&k), "vertex-image lines miss K")?;
        if meet.tangent {
            flags.push(Flag::SecantTangent(v));
        }
    }
    ensure(sigma.contains(&k), "K off the circumcircle")?;

    let sigma0 = circle_through3(&a0, &b0, &c0)?;
    ensure(
        sigma0.contains(&j) && sigma0.contains(&k),
        "image circumcircle misses J or K",
    )?;
    let side_b0c0 = line_through(&b0, &c0)?;
    let side_c0a0 = line_through(&c0, &a0)?;
    let side_a0b0 = line_through(&a0, &b0)?;

    let [circle_a, circle_b, circle_c] = Vertex::ALL.map(|v| vertex_circle(params.vertex(v), t));

    let mut xyz = Vec::with_capacity(3);
    for (v, p, alt, circle) in [
        (Vertex::A, &a, &alt_a, &circle_a),
        (Vertex::B, &b, &alt_b, &circle_b),
        (Vertex::C, &c, &alt_c, &circle_c),
    ] {
        let meet = second_line_circle(alt, circle, p)?;
        if meet.tangent {
            flags.push(Flag::AltitudeTangent(v));
        }
        xyz.push(meet.point);
    }
    let [x, y, z]: [Point<S>; 3] = xyz.try_into().expect("three points");

    let (hagge, from_center) = hagge_circle([&x, &y, &z], &q, &j)?;
    if from_center {
        flags.push(Flag::HaggeFromCenter);
    }
    ensure(hagge.center().near(&q), "hagge circle not centred at Q")?;
    ensure(
        hagge.contains(&j) && hagge.contains(&h),
        "hagge circle misses J or H",
    )?;

    let mut lmn = Vec::with_capacity(3);
    for (v, c1, c2) in [
        (Vertex::A, &circle_b, &circle_c),
        (Vertex::B, &circle_c, &circle_a),
        (Vertex::C, &circle_a, &circle_b),
    ] {
        let meet = second_circle_circle(c1, c2, &j)?;
        if meet.tangent {
            flags.push(Flag::SidePointAtJ(v));
        }
        lmn.push(meet.point);
    }
    let [l, m, n]: [Point<S>; 3] = lmn.try_into().expect("three points");
    let gws = gws_line([&l, &m, &n])?;

    flags.sort();
    Ok(Scene {
        params,
        j,
        o,
        a,
        b,
        c,
        h,
        q,
        k,
        a0,
        b0,
        c0,
        x,
        y,
        z,
        l,
        m,
        n,
        side_bc,
        side_ca,
        side_ab,
        alt_a,
        alt_b,
        alt_c,
        gws,
        side_b0c0,
        side_c0a0,
        side_a0b0,
        sigma,
        sigma0,
        hagge,
        circle_a,
        circle_b,
        circle_c,
        flags,
    })
}

/// Vertex parameters recovered from an arbitrary configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> FrameParams<S> {
    pub fn with_t(self, t: S) -> Result<Params<S>> {
        Params::new(self.a, self.b, self.c, t)
    }
}

/// Similarity `w ↦ (w − origin)/unit` in complex form, sending the chosen
/// circumcircle point to `(0, 0)` and the circumcentre to `(1, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameTransform<S> {
    pub origin: Point<S>,
    pub unit: Point<S>,
}

impl<S: Scalar> FrameTransform<S> {
    pub fn to_canonical(&self, w: &Point<S>) -> Point<S> {
        let d = w.sub(&self.origin);
        let u = &self.unit;
        let n2 = u.norm2();
        // d · conj(u) / |u|²
        let re = d.x.clone() * u.x.clone() + d.y.clone() * u.y.clone();
        let im = d.y.clone() * u.x.clone() - d.x.clone() * u.y.clone();
        Point::new(
            re.checked_div(&n2).expect("unit is nonzero"),
            im.checked_div(&n2).expect("unit is nonzero"),
        )
    }

    pub fn to_original(&self, z: &Point<S>) -> Point<S> {
        let u = &self.unit;
        let re = z.x.clone() * u.x.clone() - z.y.clone() * u.y.clone();
        let im = z.x.clone() * u.y.clone() + z.y.clone() * u.x.clone();
        self.origin.add(&Point::new(re, im))
    }

    pub fn is_identity(&self) -> bool {
        let zero = self.origin.x.zero_like();
        let one = self.origin.x.one_like();
        self.origin.near(&Point::new(zero.clone(), zero.clone()))
            && self.unit.near(&Point::new(one, zero))
    }
}

/// Maps triangle `pqr` with circumcircle point `j` into the canonical frame
/// and reads off the vertex parameters.
pub fn normalize_frame<S: Scalar>(
    p: &Point<S>,
    q: &Point<S>,
    r: &Point<S>,
    j: &Point<S>,
) -> Result<(FrameParams<S>, FrameTransform<S>)> {
    let circle = circle_through3(p, q, r).map_err(|e| match e {
        GeomError::CollinearPoints | GeomError::CoincidentPoints => {
            SceneError::DegenerateTriangle("vertices are collinear".into())
        }
        other => other.into(),
    })?;
    if !circle.contains(j) {
        return Err(SceneError::NotOnCircumcircle);
    }
    let transform = FrameTransform {
        origin: j.clone(),
        unit: circle.center().sub(j),
    };
    let mut params = Vec::with_capacity(3);
    for (v, w) in [(Vertex::A, p), (Vertex::B, q), (Vertex::C, r)] {
        let z = transform.to_canonical(w);
        if z.x.is_zero() {
            return Err(SceneError::DegenerateTriangle(format!(
                "J coincides with vertex {}",
                v.name()
            )));
        }
        params.push(z.y.checked_div(&z.x).map_err(GeomError::from)?);
    }
    let [a, b, c]: [S; 3] = params.try_into().expect("three parameters");
    Ok((FrameParams { a, b, c }, transform))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::foot_perpendicular;
    use crate::numeric::Rational;

    type Q = Rational;

    fn q(p: i64, d: i64) -> Q {
        Rational::new(p, d).unwrap()
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point<Q> {
        Point::new(q(x.0, x.1), q(y.0, y.1))
    }

    fn params(a: i64, b: i64, c: i64, t: (i64, i64)) -> Params<Q> {
        Params::new(q(a, 1), q(b, 1), q(c, 1), q(t.0, t.1)).unwrap()
    }

    fn worked() -> Params<Q> {
        params(1, 2, 3, (1, 2))
    }

    fn int3(a: i64, b: i64, c: i64) -> [Q; 3] {
        [q(a, 1), q(b, 1), q(c, 1)]
    }

    fn coeffs(l: &Line<Q>) -> [Q; 3] {
        [l.a.clone(), l.b.clone(), l.c.clone()]
    }

    #[test]
    fn vertex_points() {
        assert_eq!(vertex_point(&q(1, 1)), pt((1, 1), (1, 1)));
        assert_eq!(vertex_point(&q(0, 1)), pt((2, 1), (0, 1)));
        assert_eq!(vertex_point(&q(2, 1)), pt((2, 5), (4, 5)));
        let sigma = circumcircle(&q(0, 1));
        let v = vertex_point(&q(-7, 3));
        assert!(sigma.power(&v).is_zero());
        assert_eq!(v.y.checked_div(&v.x).unwrap(), q(-7, 3));
    }

    #[test]
    fn similarity_images() {
        let half = q(1, 2);
        assert_eq!(
            apply_similarity(&half, &pt((1, 1), (1, 1))),
            pt((0, 1), (1, 1))
        );
        assert_eq!(
            apply_similarity(&q(5, 3), &pt((0, 1), (0, 1))),
            pt((0, 1), (0, 1))
        );
        assert_eq!(
            apply_similarity(&half, &pt((-2, 5), (12, 5))),
            pt((-7, 5), (1, 1))
        );
        assert_eq!(Similarity::new(half).scale2(), q(1, 2));
    }

    #[test]
    fn image_vertices() {
        let half = q(1, 2);
        assert_eq!(image_vertex(&q(1, 1), &half), pt((0, 1), (1, 1)));
        assert_eq!(image_vertex(&q(2, 1), &half), pt((-1, 5), (3, 5)));
        let p = q(-4, 7);
        let v = vertex_point(&p);
        assert_eq!(image_vertex(&p, &q(0, 1)), v.scale(&half));
        let t = q(3, 11);
        assert_eq!(image_vertex(&p, &t), apply_similarity(&t, &v));
    }

    #[test]
    fn perspector_values() {
        assert_eq!(perspector_k(&q(0, 1)), pt((0, 1), (0, 1)));
        assert_eq!(perspector_k(&q(1, 2)), pt((1, 1), (1, 1)));
        let k = perspector_k(&q(1, 1));
        assert_eq!(k, pt((8, 5), (4, 5)));
        assert!(circumcircle(&q(0, 1)).power(&k).is_zero());
    }

    #[test]
    fn orthocentre_and_altitudes() {
        let p = worked();
        let h = orthocenter_h(&p).unwrap();
        assert_eq!(h, pt((-2, 5), (12, 5)));
        assert_eq!(
            coeffs(&altitude_line(Vertex::A, &p).unwrap()),
            int3(1, 1, -2)
        );
        // 2x + y − 8/5 = 0 and 3x + y − 6/5 = 0 after clearing denominators.
        assert_eq!(
            coeffs(&altitude_line(Vertex::B, &p).unwrap()),
            int3(10, 5, -8)
        );
        assert_eq!(
            coeffs(&altitude_line(Vertex::C, &p).unwrap()),
            int3(15, 5, -6)
        );
        assert!(altitude_line(Vertex::B, &p).unwrap().eval(&h).is_zero());
    }

    #[test]
    fn equilateral_orthocentre_is_centroid() {
        // Parameters of an equilateral triangle inscribed in Σ are irrational,
        // so use the float backend with tan-based parameters.
        use crate::numeric::{Float, Tolerance};
        let tol = Tolerance::default();
        let f = |v: f64| Float::new(v, tol);
        // A vertex at central angle φ (seen from O) has parameter tan(φ/2).
        let angles: [f64; 3] = [0.0, 120.0, 240.0];
        let [a, b, c] = angles.map(|deg| f((deg.to_radians() / 2.0).tan()));
        let p = Params::new(a, b, c, f(0.0)).unwrap();
        let h = orthocenter_h(&p).unwrap();
        let [va, vb, vc] = vertices(&p);
        let g = va.add(&vb).add(&vc).scale(&f(1.0 / 3.0));
        assert!(h.near(&g), "{h} vs {g}");
    }

    #[test]
    fn q_point_values() {
        let h = pt((-2, 5), (12, 5));
        assert_eq!(q_point(&h, &q(1, 2)).unwrap(), pt((-7, 5), (1, 1)));
        assert_eq!(q_point(&h, &q(0, 1)).unwrap(), pt((-1, 5), (6, 5)));
        let q0 = q_point(&h, &q(9, 4)).unwrap();
        assert_eq!(q0.norm2(), q0.dist2(&h));
        assert_eq!(
            q_point(&pt((0, 1), (0, 1)), &q(1, 2)),
            Err(SceneError::JEqualsH)
        );
    }

    #[test]
    fn vertex_circles() {
        let half = q(1, 2);
        let ca = vertex_circle(&q(1, 1), &half);
        assert_eq!(
            (ca.d.clone(), ca.e.clone(), ca.f.clone()),
            (q(0, 1), q(-2, 1), q(0, 1))
        );
        let cb = vertex_circle(&q(2, 1), &half);
        assert_eq!((cb.d.clone(), cb.e.clone()), (q(2, 5), q(-6, 5)));
        let p = q(-5, 6);
        let t = q(7, 3);
        let c = vertex_circle(&p, &t);
        assert!(c.f.is_zero());
        assert!(c.power(&vertex_point(&p)).is_zero());
        assert_eq!(c.center(), image_vertex(&p, &t));
    }

    #[test]
    fn xyz_points() {
        let p = worked();
        assert_eq!(xyz_point(Vertex::A, &p).unwrap().point, pt((0, 1), (2, 1)));
        assert_eq!(
            xyz_point(Vertex::B, &p).unwrap().point,
            pt((8, 25), (24, 25))
        );
        assert_eq!(
            xyz_point(Vertex::C, &p).unwrap().point,
            pt((6, 25), (12, 25))
        );
    }

    #[test]
    fn lmn_points() {
        let p = worked();
        assert_eq!(lmn_point(Vertex::A, &p).unwrap().point, pt((-2, 5), (0, 1)));
        assert_eq!(lmn_point(Vertex::B, &p).unwrap().point, pt((-3, 5), (1, 5)));
        assert_eq!(lmn_point(Vertex::C, &p).unwrap().point, pt((-4, 5), (2, 5)));
        let s = build_scene(&p).unwrap();
        assert_eq!(coeffs(&s.side_bc), int3(5, -5, 2));
        assert_eq!(coeffs(&s.side_ca), int3(1, -2, 1));
        assert_eq!(coeffs(&s.side_ab), int3(1, -3, 2));
        assert_eq!(s.l, reflect_in_line(&s.j, &s.side_b0c0));
    }

    #[test]
    fn worked_scene() {
        let s = build_scene(&worked()).unwrap();
        assert_eq!(s.k, pt((1, 1), (1, 1)));
        assert_eq!(s.flags, vec![Flag::SecantTangent(Vertex::A)]);
        assert_eq!(coeffs(&s.gws), int3(5, 5, 2));
        assert!(s.gws.eval(&s.q).is_zero());
        assert_eq!(s.hagge.center(), s.q);
        assert_eq!(s.hagge.radius2(), q(74, 25));
        assert_eq!(
            (s.sigma0.d.clone(), s.sigma0.e.clone(), s.sigma0.f.clone()),
            (q(-1, 1), q(-1, 1), q(0, 1))
        );
    }

    #[test]
    fn classical_scene() {
        let s = build_scene(&params(1, 2, 3, (0, 1))).unwrap();
        assert_eq!(s.q, pt((-1, 5), (6, 5)));
        assert_eq!(s.l, foot_perpendicular(&s.j, &s.side_bc));
        assert_eq!(s.l, pt((-1, 5), (1, 5)));
        assert_eq!(s.m, foot_perpendicular(&s.j, &s.side_ca));
        assert_eq!(s.n, foot_perpendicular(&s.j, &s.side_ab));
        assert_eq!(coeffs(&s.gws), int3(5, 0, 1));
        assert!(s.flags.contains(&Flag::PerspectorAtJ));
    }

    #[test]
    fn repeated_parameter_is_degenerate() {
        let err = Params::new(q(1, 1), q(2, 1), q(1, 1), q(1, 3)).unwrap_err();
        assert_eq!(err, SceneError::DegenerateTriangle("a = c".into()));
        let err = Params::new(q(1, 1), q(1, 1), q(3, 1), q(0, 1)).unwrap_err();
        assert_eq!(err.to_string(), "degenerate triangle: a = b");
    }

    #[test]
    fn gws_line_errors() {
        let p = pt((1, 1), (2, 1));
        assert_eq!(gws_line([&p, &p, &p]), Err(SceneError::AllCoincident));
        let r = pt((0, 1), (1, 1));
        let s = pt((5, 1), (1, 1));
        assert_eq!(gws_line([&p, &r, &s]), Err(SceneError::NotCollinear));
        // Two coinciding points still determine the line.
        let line = gws_line([&p, &p, &r]).unwrap();
        assert!(line.eval(&p).is_zero() && line.eval(&r).is_zero());
    }

    #[test]
    fn double_simson_lines() {
        let s = build_scene(&worked()).unwrap();
        let image = double_simson_line(&s.j, &s.a0, &s.b0, &s.c0).unwrap();
        assert_eq!(image, s.gws);
        assert!(image.eval(&s.q).is_zero());
        let outer = double_simson_line(&s.j, &s.a, &s.b, &s.c).unwrap();
        assert!(outer.eval(&s.h).is_zero());
        let off = pt((3, 1), (3, 1));
        assert_eq!(
            double_simson_line(&off, &s.a, &s.b, &s.c),
            Err(SceneError::NotOnCircumcircle)
        );
        let once = reflect_in_line(&s.j, &s.side_bc);
        assert_eq!(reflect_in_line(&once, &s.side_bc), s.j);
    }

    #[test]
    fn flags_round_trip_through_text() {
        let all = [
            Flag::SecantTangent(Vertex::B),
            Flag::AltitudeTangent(Vertex::C),
            Flag::SidePointAtJ(Vertex::A),
            Flag::PerspectorAtJ,
            Flag::HaggeFromCenter,
        ];
        for f in all {
            assert_eq!(f.to_string().parse::<Flag>().unwrap(), f);
        }
        assert!("at_J:A".parse::<Flag>().is_err());
        assert!("bogus".parse::<Flag>().is_err());
    }

    #[test]
    fn normalize_recovers_canonical_parameters() {
        let p = worked();
        let [a, b, c] = vertices(&p);
        let j = pt((0, 1), (0, 1));
        let (fp, tr) = normalize_frame(&a, &b, &c, &j).unwrap();
        assert_eq!((fp.a, fp.b, fp.c), (q(1, 1), q(2, 1), q(3, 1)));
        assert!(tr.is_identity());
    }

    #[test]
    fn normalize_is_similarity_invariant() {
        let p = params(-2, 1, 5, (0, 1));
        let [a, b, c] = vertices(&p);
        let j = pt((0, 1), (0, 1));
        // Scale by 3, rotate by the rational rotation (3/5, 4/5), translate.
        let moved = |w: &Point<Q>| {
            let rot = Point::new(
                q(3, 5) * w.x.clone() - q(4, 5) * w.y.clone(),
                q(4, 5) * w.x.clone() + q(3, 5) * w.y.clone(),
            );
            rot.scale(&q(3, 1)).add(&pt((7, 2), (-1, 3)))
        };
        let (fp, tr) = normalize_frame(&moved(&a), &moved(&b), &moved(&c), &moved(&j)).unwrap();
        assert_eq!((fp.a, fp.b, fp.c), (q(-2, 1), q(1, 1), q(5, 1)));
        assert_eq!(tr.to_canonical(&moved(&b)), b);
        assert_eq!(tr.to_original(&b), moved(&b));
    }

    #[test]
    fn normalize_rejects_bad_inputs() {
        let p = worked();
        let [a, b, c] = vertices(&p);
        assert!(matches!(
            normalize_frame(&a, &b, &c, &a),
            Err(SceneError::DegenerateTriangle(_))
        ));
        assert_eq!(
            normalize_frame(&a, &b, &c, &pt((5, 1), (5, 1))),
            Err(SceneError::NotOnCircumcircle)
        );
        let d = pt((3, 1), (3, 1));
        assert!(matches!(
            normalize_frame(&a, &a, &d, &pt((0, 1), (0, 1))),
            Err(SceneError::DegenerateTriangle(_))
        ));
    }
}
