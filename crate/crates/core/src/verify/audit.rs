//! Literal evaluation of the published closed forms against the
//! constructed objects.
//!
//! Two of the six printed formulas disagree with the construction on generic
//! instances: the x-coordinate of the orthocentre and the constant term of
//! the altitude. The audit reports what it sees per instance and never
//! corrects either formula.

use std::fmt;

use crate::geom::{line_through, Circle, Line, Point};
use crate::numeric::Scalar;
use crate::simson::{build_scene, Params, Scene, SceneError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Line through a vertex and its image.
    SecantLine,
    /// Circle centred at an image vertex through J.
    VertexCircle,
    /// Closed-form orthocentre.
    Orthocenter,
    /// Closed-form altitude from A (cyclically from B, C).
    Altitude,
    /// Closed-form X (cyclically Y, Z).
    AltitudePoint,
    /// Closed-form circle through X, Y, Z.
    HaggeCircle,
}

impl Formula {
    pub const ALL: [Formula; 6] = [
        Formula::SecantLine,
        Formula::VertexCircle,
        Formula::Orthocenter,
        Formula::Altitude,
        Formula::AltitudePoint,
        Formula::HaggeCircle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::SecantLine => "secant_line",
            Formula::VertexCircle => "vertex_circle",
            Formula::Orthocenter => "orthocenter",
            Formula::Altitude => "altitude",
            Formula::AltitudePoint => "altitude_point",
            Formula::HaggeCircle => "hagge_circle",
        }
    }
}

/// One compared quantity: the printed value and the constructed value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub printed: String,
    pub constructed: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Match,
    /// Names of the mismatching components.
    Mismatch(Vec<String>),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match => f.write_str("MATCH"),
            Verdict::Mismatch(names) => write!(f, "MISMATCH({})", names.join(",")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRow {
    pub formula: Formula,
    pub components: Vec<Component>,
}

impl AuditRow {
    pub fn verdict(&self) -> Verdict {
        let bad: Vec<String> = self
            .components
            .iter()
            .filter(|c| !c.matches)
            .map(|c| c.name.clone())
            .collect();
        if bad.is_empty() {
            Verdict::Match
        } else {
            Verdict::Mismatch(bad)
        }
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub params: [String; 4],
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn row(&self, formula: Formula) -> &AuditRow {
        self.rows
            .iter()
            .find(|r| r.formula == formula)
            .expect("every formula is audited")
    }

    /// Verdicts in [`Formula::ALL`] order, space-separated.
    pub fn pattern(&self) -> String {
        let verdicts: Vec<String> = self.rows.iter().map(|r| r.verdict().to_string()).collect();
        verdicts.join(" ")
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, t] = &self.params;
        writeln!(f, "audit a={a} b={b} c={c} t={t}")?;
        for row in &self.rows {
            writeln!(f, "{:<15} {}", row.formula.name(), row.verdict())?;
            for comp in &row.components {
                let mark = if comp.matches { "=" } else { "≠" };
                writeln!(
                    f,
                    "    {:<10} printed {} {mark} constructed {}",
                    comp.name, comp.printed, comp.constructed
                )?;
            }
        }
        Ok(())
    }
}

fn component<S: Scalar>(name: impl Into<String>, printed: &S, constructed: &S) -> Component {
    Component {
        name: name.into(),
        printed: printed.to_string(),
        constructed: constructed.to_string(),
        matches: printed.near(constructed),
    }
}

fn line_component<S: Scalar>(name: &str, printed: &Line<S>, constructed: &Line<S>) -> Component {
    Component {
        name: name.to_string(),
        printed: printed.to_string(),
        constructed: constructed.to_string(),
        matches: printed.same_as(constructed),
    }
}

fn circle_component<S: Scalar>(
    name: &str,
    printed: &Circle<S>,
    constructed: &Circle<S>,
) -> Component {
    Component {
        name: name.to_string(),
        printed: printed.to_string(),
        constructed: constructed.to_string(),
        matches: printed.near(constructed),
    }
}

/// `(p, q, r)` for the cyclic shift that puts `v` first.
fn cyclic<S: Scalar>(params: &Params<S>, v: Vertex) -> (S, S, S) {
    let (u, w) = v.others();
    (
        params.vertex(v).clone(),
        params.vertex(u).clone(),
        params.vertex(w).clone(),
    )
}

fn div<S: Scalar>(num: S, den: &S) -> S {
    num.checked_div(den)
        .expect("denominators are sums of squares plus one")
}

/// `(1+a²)(1+b²)(1+c²)`.
fn product_of_norms<S: Scalar>(a: &S, b: &S, c: &S) -> S {
    let one = a.one_like();
    (one.clone() + a.square()) * (one.clone() + b.square()) * (one + c.square())
}

/// `(a − 2t)x − (1 + 2at)y + 4t = 0`.
fn printed_secant<S: Scalar>(a: &S, t: &S) -> Line<S> {
    let two = t.int(2);
    let lx = a.clone() - two.clone() * t.clone();
    let ly = -(a.one_like() + two * a.clone() * t.clone());
    Line::new(lx, ly, t.int(4) * t.clone()).expect("(1 + 2at, a − 2t) never both vanish")
}

/// `(1+a²)(x² + y²) − 2(1 − 2at)x − 2(a + 2t)y = 0`, made monic.
fn printed_vertex_circle<S: Scalar>(a: &S, t: &S) -> Circle<S> {
    let norm = a.one_like() + a.square();
    let two = t.int(2);
    let d = div(
        -two.clone() * (a.one_like() - two.clone() * a.clone() * t.clone()),
        &norm,
    );
    let e = div(-two.clone() * (a.clone() + two * t.clone()), &norm);
    Circle {
        d,
        e,
        f: t.zero_like(),
    }
}

/// Closed-form orthocentre exactly as published.
fn printed_orthocenter<S: Scalar>(a: &S, b: &S, c: &S) -> Point<S> {
    let two = a.int(2);
    let den = product_of_norms(a, b, c);
    let (a2, b2, c2) = (a.square(), b.square(), c.square());
    let x = two.clone()
        * (two.clone() + a2.clone() + b2.clone() + c2.clone()
            - two.clone() * a2.clone() * b2.clone() * c2.clone());
    let y = two
        * (a.clone()
            + b.clone()
            + c.clone()
            + a.clone() * b2.clone() * c2.clone()
            + b.clone() * c2.clone() * a2.clone()
            + c.clone() * a2.clone() * b2.clone()
            + a.clone() * b2.clone()
            + a.clone() * c2.clone()
            + b.clone() * c2
            + b.clone() * a2.clone()
            + c.clone() * a2
            + c.clone() * b2);
    Point::new(div(x, &den), div(y, &den))
}

/// Published altitude coefficients `(1+a²)(b+c)`, `−(1+a²)(1−bc)`,
/// `2(a+b+c−abc)`, kept unnormalized.
fn printed_altitude<S: Scalar>(a: &S, b: &S, c: &S) -> [S; 3] {
    let norm = a.one_like() + a.square();
    let bc = b.clone() * c.clone();
    [
        norm.clone() * (b.clone() + c.clone()),
        -(norm * (a.one_like() - bc.clone())),
        a.int(2) * (a.clone() + b.clone() + c.clone() - a.clone() * bc),
    ]
}

/// Published X for the cyclic order `(a, b, c)`.
fn printed_altitude_point<S: Scalar>(a: &S, b: &S, c: &S, t: &S) -> Point<S> {
    let two = a.int(2);
    let den = product_of_norms(a, b, c);
    let abc = a.clone() * b.clone() * c.clone();
    let common = abc.clone() - a.clone() + b.clone() + c.clone();
    let x = two.clone()
        * (b.clone() + c.clone() + two.clone() * t.clone()
            - two.clone() * b.clone() * c.clone() * t.clone())
        * common.clone();
    let y = two.clone()
        * common
        * (b.clone() * c.clone() + two * t.clone() * (b.clone() + c.clone()) - a.one_like());
    Point::new(div(x, &den), div(y, &den))
}

/// Published circle through X, Y, Z, divided by `(1+a²)(1+b²)(1+c²)`.
fn printed_hagge<S: Scalar>(a: &S, b: &S, c: &S, t: &S) -> Circle<S> {
    let two = a.int(2);
    let four = a.int(4);
    let den = product_of_norms(a, b, c);
    let (a2, b2, c2) = (a.square(), b.square(), c.square());
    let abc = a.clone() * b.clone() * c.clone();
    let sum = a.clone() + b.clone() + c.clone();
    let pairs = b.clone() * c.clone() + c.clone() * a.clone() + a.clone() * b.clone();
    let mixed = a2.clone() * b.clone()
        + a2.clone() * c.clone()
        + b2.clone() * c.clone()
        + b2.clone() * a.clone()
        + c2.clone() * a.clone()
        + c2.clone() * b.clone();
    let squares = a2.clone() + b2.clone() + c2.clone();
    let a2b2c2 = a2 * b2 * c2;
    let x_bracket = a2b2c2.clone()
        + two.clone() * abc.clone() * t.clone() * pairs.clone()
        + two.clone() * t.clone() * mixed.clone()
        + two.clone() * t.clone() * sum.clone()
        - squares.clone()
        - two.clone();
    let y_bracket = two.clone() * a2b2c2 * t.clone()
        - abc * pairs
        - two.clone() * t.clone() * squares
        - mixed
        - (sum + four * t.clone());
    Circle {
        d: div(two.clone() * x_bracket, &den),
        e: div(two * y_bracket, &den),
        f: a.zero_like(),
    }
}

/// Compares every published closed form with the constructed scene.
pub fn audit_printed_formulas<S: Scalar>(params: &Params<S>) -> Result<AuditReport, SceneError> {
    let scene = build_scene(params)?;
    Ok(audit_scene(&scene))
}

fn audit_scene<S: Scalar>(s: &Scene<S>) -> AuditReport {
    let p = &s.params;
    let t = &p.t;
    let mut rows = Vec::with_capacity(Formula::ALL.len());

    let components = Vertex::ALL
        .iter()
        .map(|&v| {
            let constructed =
                line_through(s.vertex(v), s.image(v)).expect("a vertex is never its own image");
            line_component(v.name(), &printed_secant(p.vertex(v), t), &constructed)
        })
        .collect();
    rows.push(AuditRow {
        formula: Formula::SecantLine,
        components,
    });

    let components = Vertex::ALL
        .iter()
        .map(|&v| {
            circle_component(
                v.name(),
                &printed_vertex_circle(p.vertex(v), t),
                s.vertex_circle(v),
            )
        })
        .collect();
    rows.push(AuditRow {
        formula: Formula::VertexCircle,
        components,
    });

    let h = printed_orthocenter(&p.a, &p.b, &p.c);
    rows.push(AuditRow {
        formula: Formula::Orthocenter,
        components: vec![component("x", &h.x, &s.h.x), component("y", &h.y, &s.h.y)],
    });

    rows.push(AuditRow {
        formula: Formula::Altitude,
        components: altitude_components(s),
    });

    let components = Vertex::ALL
        .iter()
        .map(|&v| {
            let (a, b, c) = cyclic(p, v);
            let printed = printed_altitude_point(&a, &b, &c, t);
            let got = s.altitude_point(v);
            Component {
                name: v.altitude_point().to_string(),
                printed: printed.to_string(),
                constructed: got.to_string(),
                matches: printed.near(got),
            }
        })
        .collect();
    rows.push(AuditRow {
        formula: Formula::AltitudePoint,
        components,
    });

    let hagge = printed_hagge(&p.a, &p.b, &p.c, t);
    rows.push(AuditRow {
        formula: Formula::HaggeCircle,
        components: vec![
            component("d", &hagge.d, &s.hagge.d),
            component("e", &hagge.e, &s.hagge.e),
            component("f", &hagge.f, &s.hagge.f),
        ],
    });

    AuditReport {
        params: [&p.a, &p.b, &p.c, &p.t].map(ToString::to_string),
        rows,
    }
}

/// Direction and constant term of the published altitude, checked
/// separately for each cyclic version. The constructed constant is rescaled
/// onto the printed normalization before comparing.
fn altitude_components<S: Scalar>(s: &Scene<S>) -> Vec<Component> {
    let mut direction = Vec::new();
    let mut constant = Vec::new();
    for v in Vertex::ALL {
        let (a, b, c) = cyclic(&s.params, v);
        let [px, py, pc] = printed_altitude(&a, &b, &c);
        let alt = s.altitude(v);
        let cross = px.clone() * alt.b.clone() - py.clone() * alt.a.clone();
        let same_direction = cross.is_zero_scaled(px.magnitude().max(py.magnitude()));
        direction.push(Component {
            name: format!("direction_{}", v.name()),
            printed: format!("({px}, {py})"),
            constructed: format!("({}, {})", alt.a, alt.b),
            matches: same_direction,
        });
        // λ with λ·(a, b) = printed (a, b); pick the larger coefficient.
        let lambda = if alt.a.magnitude() >= alt.b.magnitude() {
            div(px.clone(), &alt.a)
        } else {
            div(py.clone(), &alt.b)
        };
        let rescaled = lambda * alt.c.clone();
        let mut comp = component(format!("constant_{}", v.name()), &pc, &rescaled);
        comp.matches &= same_direction;
        constant.push(comp);
    }
    direction.extend(constant);
    direction
}
