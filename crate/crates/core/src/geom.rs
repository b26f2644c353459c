//! Planar primitives and square-root-free constructions.
//!
//! Lines are stored as `ax + by + c = 0` in canonical form and circles as
//! `x² + y² + dx + ey + f = 0`. Every construction here uses only field
//! operations: second intersections are recovered from one known common
//! point, so they stay rational whenever the inputs are.

use std::fmt;

use thiserror::Error;

use crate::numeric::{NumericError, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("points coincide")]
    CoincidentPoints,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("circle would have zero radius")]
    ZeroRadius,
    #[error("circles are identical")]
    IdenticalCircles,
    #[error("concentric circles have no radical line")]
    NoRadicalLine,
    #[error("known point is not on both curves")]
    KnownPointNotIncident,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("point is not on the circumcircle")]
    NotOnCircumcircle,
    #[error("line coefficients a and b are both zero")]
    DegenerateLine,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn origin_like(s: &S) -> Self {
        Point::new(s.zero_like(), s.zero_like())
    }

    pub fn add(&self, other: &Self) -> Self {
        Point::new(
            self.x.clone() + other.x.clone(),
            self.y.clone() + other.y.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point::new(
            self.x.clone() - other.x.clone(),
            self.y.clone() - other.y.clone(),
        )
    }

    pub fn scale(&self, k: &S) -> Self {
        Point::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    pub fn norm2(&self) -> S {
        self.dot(self)
    }

    pub fn dist2(&self, other: &Self) -> S {
        self.sub(other).norm2()
    }

    /// Coordinate-wise equality, tolerant on the float backend.
    pub fn near(&self, other: &Self) -> bool {
        self.x.near(&other.x) && self.y.near(&other.y)
    }

    fn magnitude(&self) -> f64 {
        self.x.magnitude().max(self.y.magnitude())
    }
}

impl<S: fmt::Display> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn midpoint<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Point<S> {
    let half = p.x.ratio(1, 2);
    p.add(q).scale(&half)
}

/// `ax + by + c = 0`, canonical so equal lines compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Line<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> Line<S> {
    pub fn new(a: S, b: S, c: S) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::DegenerateLine);
        }
        let [a, b, c] = S::canonical_triple([a, b, c]);
        Ok(Line { a, b, c })
    }

    /// Value of `ax + by + c` at `p`.
    pub fn eval(&self, p: &Point<S>) -> S {
        self.a.clone() * p.x.clone() + self.b.clone() * p.y.clone() + self.c.clone()
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        let scale = self.scale() * p.magnitude().max(1.0);
        self.eval(p).is_zero_scaled(scale)
    }

    pub fn normal(&self) -> Point<S> {
        Point::new(self.a.clone(), self.b.clone())
    }

    pub fn direction(&self) -> Point<S> {
        Point::new(self.b.clone(), -self.a.clone())
    }

    /// Same line up to scaling. Literal on the exact backend.
    pub fn same_as(&self, other: &Self) -> bool {
        let cross = |p: &S, q: &S, r: &S, s: &S| p.clone() * s.clone() - q.clone() * r.clone();
        let scale = self.scale() * other.scale();
        cross(&self.a, &self.b, &other.a, &other.b).is_zero_scaled(scale)
            && cross(&self.a, &self.c, &other.a, &other.c).is_zero_scaled(scale)
            && cross(&self.b, &self.c, &other.b, &other.c).is_zero_scaled(scale)
    }

    fn scale(&self) -> f64 {
        self.a
            .magnitude()
            .max(self.b.magnitude())
            .max(self.c.magnitude())
    }
}

impl<S: fmt::Display> fmt::Display for Line<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x + ({})y + ({}) = 0", self.a, self.b, self.c)
    }
}

/// `x² + y² + dx + ey + f = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Circle<S> {
    pub d: S,
    pub e: S,
    pub f: S,
}

impl<S: Scalar> Circle<S> {
    /// Fails unless the equation describes a real circle of positive radius.
    pub fn new(d: S, e: S, f: S) -> Result<Self> {
        let c = Circle { d, e, f };
        let r2 = c.radius2();
        if r2.is_zero() || r2.to_f64() < 0.0 {
            return Err(GeomError::ZeroRadius);
        }
        Ok(c)
    }

    pub fn center(&self) -> Point<S> {
        let half = self.d.ratio(-1, 2);
        Point::new(self.d.clone() * half.clone(), self.e.clone() * half)
    }

    pub fn radius2(&self) -> S {
        let quarter = self.d.ratio(1, 4);
        (self.d.square() + self.e.square()) * quarter - self.f.clone()
    }

    /// Power of `p`: `x² + y² + dx + ey + f`.
    pub fn power(&self, p: &Point<S>) -> S {
        p.norm2() + self.d.clone() * p.x.clone() + self.e.clone() * p.y.clone() + self.f.clone()
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        let m = p.magnitude().max(1.0);
        let scale = (m * m).max(self.scale() * m);
        self.power(p).is_zero_scaled(scale)
    }

    pub fn near(&self, other: &Self) -> bool {
        self.d.near(&other.d) && self.e.near(&other.e) && self.f.near(&other.f)
    }

    fn scale(&self) -> f64 {
        self.d
            .magnitude()
            .max(self.e.magnitude())
            .max(self.f.magnitude())
    }
}

impl<S: fmt::Display> fmt::Display for Circle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x² + y² + ({})x + ({})y + ({}) = 0",
            self.d, self.e, self.f
        )
    }
}

/// Tangent of the directed angle from one line to another, taken mod π.
#[derive(Debug, Clone, PartialEq)]
pub enum DirectedTan<S> {
    Finite(S),
    /// The lines are perpendicular.
    Infinite,
}

impl<S: Scalar> DirectedTan<S> {
    pub fn near(&self, other: &Self) -> bool {
        match (self, other) {
            (DirectedTan::Finite(x), DirectedTan::Finite(y)) => x.near(y),
            (DirectedTan::Infinite, DirectedTan::Infinite) => true,
            _ => false,
        }
    }
}

impl<S: fmt::Display> fmt::Display for DirectedTan<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectedTan::Finite(v) => write!(f, "{v}"),
            DirectedTan::Infinite => f.write_str("inf"),
        }
    }
}

pub fn line_through<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Result<Line<S>> {
    if p.near(q) {
        return Err(GeomError::CoincidentPoints);
    }
    let a = p.y.clone() - q.y.clone();
    let b = q.x.clone() - p.x.clone();
    let c = p.x.clone() * q.y.clone() - q.x.clone() * p.y.clone();
    Line::new(a, b, c)
}

/// Line through `p` whose normal is `normal`.
fn line_with_normal<S: Scalar>(p: &Point<S>, normal: Point<S>) -> Result<Line<S>> {
    let c = -normal.dot(p);
    Line::new(normal.x, normal.y, c)
}

pub fn perpendicular_through<S: Scalar>(p: &Point<S>, l: &Line<S>) -> Line<S> {
    line_with_normal(p, l.direction()).expect("line direction is nonzero")
}

pub fn parallel_through<S: Scalar>(p: &Point<S>, l: &Line<S>) -> Line<S> {
    line_with_normal(p, l.normal()).expect("line normal is nonzero")
}

pub fn intersect_lines<S: Scalar>(l1: &Line<S>, l2: &Line<S>) -> Result<Point<S>> {
    let det = l1.a.clone() * l2.b.clone() - l2.a.clone() * l1.b.clone();
    if det.is_zero_scaled(l1.scale() * l2.scale()) {
        return Err(GeomError::ParallelLines);
    }
    let x = l1.b.clone() * l2.c.clone() - l2.b.clone() * l1.c.clone();
    let y = l1.c.clone() * l2.a.clone() - l2.c.clone() * l1.a.clone();
    Ok(Point::new(x.checked_div(&det)?, y.checked_div(&det)?))
}

pub fn foot_perpendicular<S: Scalar>(p: &Point<S>, l: &Line<S>) -> Point<S> {
    let n = l.normal();
    let k = l
        .eval(p)
        .checked_div(&n.norm2())
        .expect("line normal is nonzero");
    p.sub(&n.scale(&k))
}

pub fn reflect_in_line<S: Scalar>(p: &Point<S>, l: &Line<S>) -> Point<S> {
    let foot = foot_perpendicular(p, l);
    foot.scale(&p.x.int(2)).sub(p)
}

pub fn circle_through3<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> Result<Circle<S>> {
    if p.near(q) || q.near(r) || r.near(p) {
        return Err(GeomError::CoincidentPoints);
    }
    if collinear3(p, q, r) {
        return Err(GeomError::CollinearPoints);
    }
    // Subtracting the equation at p from those at q and r leaves a 2×2
    // linear system in (d, e).
    let u = q.sub(p);
    let v = r.sub(p);
    let ru = p.norm2() - q.norm2();
    let rv = p.norm2() - r.norm2();
    let det = u.x.clone() * v.y.clone() - v.x.clone() * u.y.clone();
    let d = (ru.clone() * v.y.clone() - rv.clone() * u.y.clone()).checked_div(&det)?;
    let e = (u.x.clone() * rv - v.x.clone() * ru).checked_div(&det)?;
    let f = -(p.norm2() + d.clone() * p.x.clone() + e.clone() * p.y.clone());
    Circle::new(d, e, f)
}

pub fn circle_center_through<S: Scalar>(center: &Point<S>, p: &Point<S>) -> Result<Circle<S>> {
    if center.near(p) {
        return Err(GeomError::ZeroRadius);
    }
    let m2 = center.x.int(-2);
    let d = center.x.clone() * m2.clone();
    let e = center.y.clone() * m2;
    let f = center.norm2() - center.dist2(p);
    Circle::new(d, e, f)
}

pub fn radical_line<S: Scalar>(c1: &Circle<S>, c2: &Circle<S>) -> Result<Line<S>> {
    let a = c1.d.clone() - c2.d.clone();
    let b = c1.e.clone() - c2.e.clone();
    let c = c1.f.clone() - c2.f.clone();
    if a.is_zero() && b.is_zero() {
        return Err(if c.is_zero() {
            GeomError::IdenticalCircles
        } else {
            GeomError::NoRadicalLine
        });
    }
    Line::new(a, b, c)
}

/// A second intersection together with whether the curves touch at the
/// known point (in which case `point` is the known point).
#[derive(Debug, Clone, PartialEq)]
pub struct SecondPoint<S> {
    pub point: Point<S>,
    pub tangent: bool,
}

/// Other intersection of `l` and `c`, given one common point `known`.
///
/// Writing the line as `known + s·dir`, the restricted quadratic has the root
/// `s = 0`, so the other root is `-(2 known·dir + d dx + e dy) / |dir|²`.
pub fn second_line_circle<S: Scalar>(
    l: &Line<S>,
    c: &Circle<S>,
    known: &Point<S>,
) -> Result<SecondPoint<S>> {
    if !l.contains(known) || !c.contains(known) {
        return Err(GeomError::KnownPointNotIncident);
    }
    let dir = l.direction();
    let linear = known.dot(&dir) * known.x.int(2)
        + c.d.clone() * dir.x.clone()
        + c.e.clone() * dir.y.clone();
    let s = (-linear).checked_div(&dir.norm2())?;
    let scale = known.magnitude().max(1.0).max(c.scale());
    if s.is_zero_scaled(scale) {
        return Ok(SecondPoint {
            point: known.clone(),
            tangent: true,
        });
    }
    Ok(SecondPoint {
        point: known.add(&dir.scale(&s)),
        tangent: false,
    })
}

pub fn second_circle_circle<S: Scalar>(
    c1: &Circle<S>,
    c2: &Circle<S>,
    known: &Point<S>,
) -> Result<SecondPoint<S>> {
    if !c2.contains(known) {
        return Err(GeomError::KnownPointNotIncident);
    }
    let axis = radical_line(c1, c2)?;
    second_line_circle(&axis, c1, known)
}

fn det3<S: Scalar>(m: [[S; 3]; 3]) -> S {
    let [[a, b, c], [d, e, f], [g, h, i]] = m;
    a * (e.clone() * i.clone() - f.clone() * h.clone()) - b * (d.clone() * i - f * g.clone())
        + c * (d * h - e * g)
}

fn det4<S: Scalar>(m: [[S; 4]; 4]) -> S {
    let mut total: Option<S> = None;
    for col in 0..4 {
        let minor: [[S; 3]; 3] = std::array::from_fn(|r| {
            let row = &m[r + 1];
            let mut cols = (0..4).filter(|&k| k != col).map(|k| row[k].clone());
            [
                cols.next().unwrap(),
                cols.next().unwrap(),
                cols.next().unwrap(),
            ]
        });
        let term = m[0][col].clone() * det3(minor);
        total = Some(match total {
            None => term,
            Some(acc) if col % 2 == 1 => acc - term,
            Some(acc) => acc + term,
        });
    }
    total.expect("four columns")
}

fn max_magnitude<'a, S: Scalar + 'a>(values: impl IntoIterator<Item = &'a S>) -> f64 {
    values
        .into_iter()
        .map(Scalar::magnitude)
        .fold(1.0, f64::max)
}

pub fn collinear3<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> bool {
    let one = p.x.one_like();
    let rows = [p, q, r].map(|pt| [pt.x.clone(), pt.y.clone(), one.clone()]);
    let scale = max_magnitude(rows.iter().flatten());
    det3(rows).is_zero_scaled(scale)
}

/// True iff the four points lie on one circle or one line.
pub fn concyclic4<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>, s: &Point<S>) -> bool {
    let one = p.x.one_like();
    let rows = [p, q, r, s].map(|pt| [pt.norm2(), pt.x.clone(), pt.y.clone(), one.clone()]);
    let scale = max_magnitude(rows.iter().flatten());
    det4(rows).is_zero_scaled(scale)
}

/// `(a1·b2 − a2·b1) / (a1·a2 + b1·b2)`: tangent of the angle turning `l1`
/// onto `l2`, independent of coefficient scaling and orientation.
pub fn directed_tan<S: Scalar>(l1: &Line<S>, l2: &Line<S>) -> DirectedTan<S> {
    let num = l1.a.clone() * l2.b.clone() - l2.a.clone() * l1.b.clone();
    let den = l1.a.clone() * l2.a.clone() + l1.b.clone() * l2.b.clone();
    if den.is_zero_scaled(l1.scale() * l2.scale()) {
        return DirectedTan::Infinite;
    }
    DirectedTan::Finite(num.checked_div(&den).expect("nonzero denominator"))
}

pub fn orthocenter3<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> Result<Point<S>> {
    if p.near(q) || q.near(r) || r.near(p) || collinear3(p, q, r) {
        return Err(GeomError::CollinearPoints);
    }
    let alt_p = perpendicular_through(p, &line_through(q, r)?);
    let alt_q = perpendicular_through(q, &line_through(r, p)?);
    let alt_r = perpendicular_through(r, &line_through(p, q)?);
    let h = intersect_lines(&alt_p, &alt_q)?;
    debug_assert!(alt_r.contains(&h), "altitudes must concur");
    Ok(h)
}

pub fn circumcenter3<S: Scalar>(p: &Point<S>, q: &Point<S>, r: &Point<S>) -> Result<Point<S>> {
    Ok(circle_through3(p, q, r)?.center())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Float, Rational, Tolerance};
    use proptest::prelude::*;

    type Q = Rational;

    fn q(p: i64, d: i64) -> Q {
        Rational::new(p, d).unwrap()
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point<Q> {
        Point::new(q(x.0, x.1), q(y.0, y.1))
    }

    fn ip(x: i64, y: i64) -> Point<Q> {
        pt((x, 1), (y, 1))
    }

    fn line(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Line<Q> {
        Line::new(q(a.0, a.1), q(b.0, b.1), q(c.0, c.1)).unwrap()
    }

    fn circle(d: (i64, i64), e: (i64, i64), f: (i64, i64)) -> Circle<Q> {
        Circle::new(q(d.0, d.1), q(e.0, e.1), q(f.0, f.1)).unwrap()
    }

    fn coeffs(l: &Line<Q>) -> [Q; 3] {
        [l.a.clone(), l.b.clone(), l.c.clone()]
    }

    fn int3(a: i64, b: i64, c: i64) -> [Q; 3] {
        [q(a, 1), q(b, 1), q(c, 1)]
    }

    #[test]
    fn line_through_examples() {
        assert_eq!(
            coeffs(&line_through(&ip(0, 0), &ip(1, 1)).unwrap()),
            int3(1, -1, 0)
        );
        let b = pt((2, 5), (4, 5));
        let c = pt((1, 5), (3, 5));
        assert_eq!(coeffs(&line_through(&b, &c).unwrap()), int3(5, -5, 2));
        assert_eq!(
            coeffs(&line_through(&ip(0, 0), &ip(0, 1)).unwrap()),
            int3(1, 0, 0)
        );
        assert_eq!(line_through(&b, &b), Err(GeomError::CoincidentPoints));
    }

    #[test]
    fn perpendicular_examples() {
        let bc = line((1, 1), (-1, 1), (2, 5));
        let alt = perpendicular_through(&ip(1, 1), &bc);
        assert_eq!(coeffs(&alt), int3(1, 1, -2));
        let on = pt((-1, 5), (1, 5));
        let at = perpendicular_through(&on, &bc);
        assert!(at.contains(&on));
        assert!(at.normal().dot(&bc.normal()).is_zero());
        let x_axis = line((0, 1), (1, 1), (0, 1));
        assert_eq!(
            coeffs(&perpendicular_through(&ip(0, 0), &x_axis)),
            int3(1, 0, 0)
        );
    }

    #[test]
    fn foot_examples() {
        let bc = line((1, 1), (-1, 1), (2, 5));
        assert_eq!(foot_perpendicular(&ip(0, 0), &bc), pt((-1, 5), (1, 5)));
        let on = pt((-1, 5), (1, 5));
        assert_eq!(foot_perpendicular(&on, &bc), on);
        let vertical = line((1, 1), (0, 1), (1, 5));
        assert_eq!(
            foot_perpendicular(&ip(0, 0), &vertical),
            pt((-1, 5), (0, 1))
        );
    }

    #[test]
    fn reflect_examples() {
        let vertical = line((1, 1), (0, 1), (1, 5));
        assert_eq!(reflect_in_line(&ip(0, 0), &vertical), pt((-2, 5), (0, 1)));
        let on = pt((-1, 5), (7, 3));
        assert_eq!(reflect_in_line(&on, &vertical), on);
        let diag = line((1, 1), (-1, 1), (0, 1));
        assert_eq!(reflect_in_line(&ip(0, 0), &diag), ip(0, 0));
    }

    #[test]
    fn circle_through3_examples() {
        let x = ip(0, 2);
        let y = pt((8, 25), (24, 25));
        let z = pt((6, 25), (12, 25));
        assert_eq!(
            circle_through3(&x, &y, &z).unwrap(),
            circle((14, 5), (-2, 1), (0, 1))
        );

        let a0 = ip(0, 1);
        let b0 = pt((-1, 5), (3, 5));
        let c0 = pt((-1, 5), (2, 5));
        let sigma0 = circle_through3(&a0, &b0, &c0).unwrap();
        assert_eq!(sigma0, circle((-1, 1), (-1, 1), (0, 1)));
        assert!(sigma0.contains(&ip(0, 0)) && sigma0.contains(&ip(1, 1)));

        assert_eq!(
            circle_through3(&ip(1, 0), &ip(-1, 0), &ip(0, 1)).unwrap(),
            circle((0, 1), (0, 1), (-1, 1))
        );
        assert_eq!(
            circle_through3(&ip(0, 0), &ip(1, 1), &ip(2, 2)),
            Err(GeomError::CollinearPoints)
        );
    }

    #[test]
    fn circle_center_examples() {
        assert_eq!(
            circle_center_through(&ip(0, 1), &ip(0, 0)).unwrap(),
            circle((0, 1), (-2, 1), (0, 1))
        );
        assert_eq!(
            circle_center_through(&ip(1, 0), &ip(0, 0)).unwrap(),
            circle((-2, 1), (0, 1), (0, 1))
        );
        assert_eq!(
            circle_center_through(&ip(0, 0), &ip(1, 0)).unwrap(),
            circle((0, 1), (0, 1), (-1, 1))
        );
        assert_eq!(
            circle_center_through(&ip(2, 3), &ip(2, 3)),
            Err(GeomError::ZeroRadius)
        );
    }

    #[test]
    fn radical_line_examples() {
        let cb = circle((2, 5), (-6, 5), (0, 1));
        let cc = circle((2, 5), (-4, 5), (0, 1));
        assert_eq!(coeffs(&radical_line(&cb, &cc).unwrap()), int3(0, 1, 0));

        let inner = circle((0, 1), (0, 1), (-1, 1));
        let outer = circle((0, 1), (0, 1), (-4, 1));
        assert_eq!(radical_line(&inner, &outer), Err(GeomError::NoRadicalLine));
        assert_eq!(
            radical_line(&inner, &inner),
            Err(GeomError::IdenticalCircles)
        );

        let p = pt((3, 7), (-2, 9));
        let c1 = circle_center_through(&ip(1, 2), &p).unwrap();
        let c2 = circle_center_through(&ip(-3, 1), &p).unwrap();
        assert!(radical_line(&c1, &c2).unwrap().contains(&p));
    }

    #[test]
    fn second_line_circle_examples() {
        let alt = line((1, 1), (1, 1), (-2, 1));
        let ca = circle((0, 1), (-2, 1), (0, 1));
        let x = second_line_circle(&alt, &ca, &ip(1, 1)).unwrap();
        assert_eq!(
            x,
            SecondPoint {
                point: ip(0, 2),
                tangent: false
            }
        );

        let sigma = circle((-2, 1), (0, 1), (0, 1));
        let y1 = line((0, 1), (1, 1), (-1, 1));
        let touch = second_line_circle(&y1, &sigma, &ip(1, 1)).unwrap();
        assert_eq!(
            touch,
            SecondPoint {
                point: ip(1, 1),
                tangent: true
            }
        );

        let x_axis = line((0, 1), (1, 1), (0, 1));
        let far = second_line_circle(&x_axis, &sigma, &ip(0, 0)).unwrap();
        assert_eq!(far.point, ip(2, 0));

        assert_eq!(
            second_line_circle(&x_axis, &sigma, &ip(1, 0)),
            Err(GeomError::KnownPointNotIncident)
        );
    }

    #[test]
    fn second_circle_circle_examples() {
        let ca = circle((0, 1), (-2, 1), (0, 1));
        let cb = circle((2, 5), (-6, 5), (0, 1));
        let cc = circle((2, 5), (-4, 5), (0, 1));
        let j = ip(0, 0);
        assert_eq!(
            second_circle_circle(&cb, &cc, &j).unwrap().point,
            pt((-2, 5), (0, 1))
        );
        assert_eq!(
            second_circle_circle(&cc, &ca, &j).unwrap().point,
            pt((-3, 5), (1, 5))
        );
        assert_eq!(
            second_circle_circle(&ca, &cb, &j).unwrap().point,
            pt((-4, 5), (2, 5))
        );
    }

    #[test]
    fn collinear_examples() {
        let l = pt((-2, 5), (0, 1));
        let m = pt((-3, 5), (1, 5));
        let n = pt((-4, 5), (2, 5));
        assert!(collinear3(&l, &m, &n));
        assert!(!collinear3(&ip(0, 0), &ip(1, 0), &ip(0, 1)));
        assert!(collinear3(&l, &l, &n));
    }

    #[test]
    fn concyclic_examples() {
        let x = ip(0, 2);
        let y = pt((8, 25), (24, 25));
        let z = pt((6, 25), (12, 25));
        let h = pt((-2, 5), (12, 5));
        assert!(concyclic4(&x, &y, &z, &h));
        assert!(concyclic4(&x, &y, &z, &ip(0, 0)));
        assert!(concyclic4(&ip(0, 0), &ip(1, 0), &ip(0, 1), &ip(1, 1)));
        assert!(!concyclic4(&ip(0, 0), &ip(1, 0), &ip(0, 1), &ip(2, 1)));
    }

    #[test]
    fn directed_tan_examples() {
        let x_axis = line((0, 1), (1, 1), (0, 1));
        let bc = line((1, 1), (-1, 1), (2, 5));
        assert_eq!(directed_tan(&x_axis, &bc), DirectedTan::Finite(q(1, 1)));
        assert_eq!(directed_tan(&bc, &bc), DirectedTan::Finite(q(0, 1)));
        let y_axis = line((1, 1), (0, 1), (0, 1));
        assert_eq!(directed_tan(&y_axis, &x_axis), DirectedTan::Infinite);
    }

    #[test]
    fn orthocenter_examples() {
        let a = ip(1, 1);
        let b = pt((2, 5), (4, 5));
        let c = pt((1, 5), (3, 5));
        let h = orthocenter3(&a, &b, &c).unwrap();
        assert_eq!(h, pt((-2, 5), (12, 5)));
        // A + B + C − 2O with circumcenter O = (1, 0).
        assert_eq!(h, a.add(&b).add(&c).sub(&ip(2, 0)));

        assert_eq!(
            orthocenter3(&ip(0, 0), &ip(1, 0), &ip(0, 1)).unwrap(),
            ip(0, 0)
        );

        let a0 = ip(0, 1);
        let b0 = pt((-1, 5), (3, 5));
        let c0 = pt((-1, 5), (2, 5));
        assert_eq!(orthocenter3(&a0, &b0, &c0).unwrap(), pt((-7, 5), (1, 1)));
        assert_eq!(
            orthocenter3(&ip(0, 0), &ip(1, 1), &ip(3, 3)),
            Err(GeomError::CollinearPoints)
        );
    }

    #[test]
    fn float_backend_agrees_on_worked_values() {
        let tol = Tolerance::default();
        let f = |p: i64, d: i64| Float::from_rational(&q(p, d), &tol);
        let a = Point::new(f(1, 1), f(1, 1));
        let b = Point::new(f(2, 5), f(4, 5));
        let c = Point::new(f(1, 5), f(3, 5));
        let h = orthocenter3(&a, &b, &c).unwrap();
        assert!(h.near(&Point::new(f(-2, 5), f(12, 5))));
        let bc = line_through(&b, &c).unwrap();
        assert!(bc.contains(&b) && bc.contains(&c));
        assert!(collinear3(&a, &a, &b));
    }

    // --- properties over random rational inputs ---

    fn rat() -> impl Strategy<Value = Q> {
        (-60i64..60, 1i64..12).prop_map(|(p, d)| q(p, d))
    }

    fn point() -> impl Strategy<Value = Point<Q>> {
        (rat(), rat()).prop_map(|(x, y)| Point::new(x, y))
    }

    fn triangle() -> impl Strategy<Value = (Point<Q>, Point<Q>, Point<Q>)> {
        (point(), point(), point()).prop_filter("non-degenerate", |(p, q, r)| !collinear3(p, q, r))
    }

    fn two_points() -> impl Strategy<Value = (Point<Q>, Point<Q>)> {
        (point(), point()).prop_filter("distinct", |(p, q)| p != q)
    }

    proptest! {
        #[test]
        fn constructed_curves_contain_their_points((p, q, r) in triangle()) {
            let l = line_through(&p, &q).unwrap();
            prop_assert!(l.eval(&p).is_zero() && l.eval(&q).is_zero());
            let c = circle_through3(&p, &q, &r).unwrap();
            for x in [&p, &q, &r] {
                prop_assert!(c.power(x).is_zero());
            }
            let cc = circle_center_through(&p, &q).unwrap();
            prop_assert_eq!(cc.center(), p.clone());
            prop_assert!(cc.power(&q).is_zero());
        }

        #[test]
        fn reflection_is_involution_and_foot_is_midpoint((p, q) in two_points(), s in point()) {
            let l = line_through(&p, &q).unwrap();
            let r = reflect_in_line(&s, &l);
            prop_assert_eq!(reflect_in_line(&r, &l), s.clone());
            prop_assert_eq!(foot_perpendicular(&s, &l), midpoint(&s, &r));
            prop_assert!(l.eval(&midpoint(&s, &r)).is_zero());
        }

        #[test]
        fn second_line_circle_round_trips((p, q, r) in triangle()) {
            let c = circle_through3(&p, &q, &r).unwrap();
            let l = line_through(&p, &q).unwrap();
            let other = second_line_circle(&l, &c, &p).unwrap();
            prop_assert_eq!(&other.point, &q);
            prop_assert!(!other.tangent);
            let back = second_line_circle(&l, &c, &other.point).unwrap();
            prop_assert_eq!(back.point, p);
        }

        #[test]
        fn second_circle_circle_on_both(common in point(), c1 in point(), c2 in point()) {
            prop_assume!(c1 != common && c2 != common && c1 != c2);
            prop_assume!(!collinear3(&c1, &c2, &common));
            let k1 = circle_center_through(&c1, &common).unwrap();
            let k2 = circle_center_through(&c2, &common).unwrap();
            let other = second_circle_circle(&k1, &k2, &common).unwrap();
            prop_assert!(k1.power(&other.point).is_zero());
            prop_assert!(k2.power(&other.point).is_zero());
            prop_assert!(!other.tangent);
            let axis = radical_line(&k1, &k2).unwrap();
            prop_assert!(axis.eval(&common).is_zero() && axis.eval(&other.point).is_zero());
            let centers = line_through(&c1, &c2).unwrap();
            prop_assert!(axis.direction().dot(&centers.direction()).is_zero());
        }

        #[test]
        fn predicates_are_permutation_invariant((p, q, r) in triangle(), s in point()) {
            let col = collinear3(&p, &q, &s);
            prop_assert_eq!(col, collinear3(&s, &p, &q));
            prop_assert_eq!(col, collinear3(&q, &s, &p));
            let cyc = concyclic4(&p, &q, &r, &s);
            prop_assert_eq!(cyc, concyclic4(&s, &r, &q, &p));
            prop_assert_eq!(cyc, concyclic4(&q, &s, &p, &r));
        }

        #[test]
        fn directed_tan_ignores_scaling((p, q) in two_points(), (r, s) in two_points(), k in rat()) {
            prop_assume!(!k.is_zero());
            let l1 = line_through(&p, &q).unwrap();
            let l2 = line_through(&r, &s).unwrap();
            let scaled = Line { a: l2.a.clone() * k.clone(), b: l2.b.clone() * k.clone(), c: l2.c.clone() * k.clone() };
            prop_assert_eq!(directed_tan(&l1, &l2), directed_tan(&l1, &scaled));
            let flipped = Line { a: -l1.a.clone(), b: -l1.b.clone(), c: -l1.c.clone() };
            prop_assert_eq!(directed_tan(&l1, &l2), directed_tan(&flipped, &l2));
        }

        #[test]
        fn orthocenter_on_all_altitudes((p, q, r) in triangle()) {
            let h = orthocenter3(&p, &q, &r).unwrap();
            for (v, s1, s2) in [(&p, &q, &r), (&q, &r, &p), (&r, &p, &q)] {
                let alt = perpendicular_through(v, &line_through(s1, s2).unwrap());
                prop_assert!(alt.eval(&h).is_zero());
            }
            prop_assert_eq!(&h, &orthocenter3(&q, &r, &p).unwrap());
            prop_assert_eq!(&h, &orthocenter3(&r, &q, &p).unwrap());
        }
    }
}
