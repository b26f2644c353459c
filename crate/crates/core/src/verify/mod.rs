//! Named theorem checks over a built [`Scene`].
//!
//! Checks never short-circuit: each one records every failing incidence as a
//! witness entry, and all of them run even after earlier failures.

mod audit;
mod fuzz;

use std::fmt;

pub use audit::{audit_printed_formulas, AuditReport, AuditRow, Component, Formula, Verdict};
pub use fuzz::{
    audit_sample, fuzz, generate_params, FuzzConfig, FuzzConfigError, FuzzReport, InstanceOutcome,
    InstanceStatus, ParamGenerator,
};

use crate::geom::{
    circle_through3, collinear3, concyclic4, directed_tan, foot_perpendicular, line_through,
    midpoint, orthocenter3, reflect_in_line, second_line_circle, DirectedTan, Line, Point,
};
use crate::numeric::Scalar;
use crate::simson::{
    apply_similarity, double_simson_line, perspector_k, Scene, Similarity, Vertex,
};

/// Check names in execution order.
pub const CHECK_NAMES: [&str; 19] = [
    "on_circumcircle",
    "sigma0_through_J_and_K",
    "q_equidistant",
    "q_is_image_of_H",
    "similarity_ratio",
    "perspector_common",
    "xyz_incidences",
    "hagge_center_and_members",
    "L_on_BC",
    "M_on_CA",
    "N_on_AB",
    "lmn_collinear",
    "q_on_line",
    "reflection_route_equals_radical_route",
    "line_equals_double_simson_of_image",
    "equal_oblique_tangents",
    "concyclic_chains_thm41",
    "t_zero_reduction",
    "double_simson_of_ABC_through_H",
];

/// Offending values behind a failed check, as `(label, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub entries: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    /// False when the check's premise does not hold for this scene (for
    /// example the classical reduction when `t ≠ 0`); such checks pass.
    pub applicable: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub backend: &'static str,
    pub params: [(&'static str, String); 4],
    pub checks: Vec<CheckResult>,
    pub flags: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing_names(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(f, "params: {} ({})", params.join(" "), self.backend)?;
        if !self.flags.is_empty() {
            writeln!(f, "flags: {}", self.flags.join(", "))?;
        }
        for check in &self.checks {
            let status = match (check.pass, check.applicable) {
                (true, true) => "PASS",
                (true, false) => "PASS (not applicable)",
                (false, _) => "FAIL",
            };
            writeln!(f, "{status:<6} {}", check.name)?;
            if let Some(w) = &check.witness {
                for (label, value) in &w.entries {
                    writeln!(f, "         {label}: {value}")?;
                }
            }
        }
        write!(f, "{}/{} checks pass", self.passed(), self.checks.len())
    }
}

/// Accumulates failures for one named check.
struct Check {
    name: &'static str,
    applicable: bool,
    failures: Vec<(String, String)>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            applicable: true,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, label: impl Into<String>, value: impl FnOnce() -> String) {
        if !ok {
            self.failures.push((label.into(), value()));
        }
    }

    fn zero<S: Scalar>(&mut self, label: &str, residual: S, ok: bool) {
        self.expect(ok, format!("residual {label}"), || residual.to_string());
    }

    fn same_point<S: Scalar>(&mut self, label: &str, got: &Point<S>, want: &Point<S>) {
        self.expect(got.near(want), label, || format!("{got} != {want}"));
    }

    fn same_line<S: Scalar>(&mut self, label: &str, got: &Line<S>, want: &Line<S>) {
        self.expect(got.same_as(want), label, || format!("{got} != {want}"));
    }

    fn error(&mut self, label: &str, err: impl fmt::Display) {
        self.failures
            .push((label.to_string(), format!("error: {err}")));
    }

    fn finish(self) -> CheckResult {
        let pass = self.failures.is_empty();
        CheckResult {
            name: self.name,
            pass,
            applicable: self.applicable,
            witness: (!pass).then_some(Witness {
                entries: self.failures,
            }),
        }
    }
}

fn on_line<S: Scalar>(check: &mut Check, label: &str, line: &Line<S>, p: &Point<S>) {
    let ok = line.contains(p);
    check.zero(label, line.eval(p), ok);
}

fn on_circle<S: Scalar>(
    check: &mut Check,
    label: &str,
    circle: &crate::geom::Circle<S>,
    p: &Point<S>,
) {
    let ok = circle.contains(p);
    check.zero(label, circle.power(p), ok);
}

/// Runs every named check against `scene`.
pub fn run_checks<S: Scalar>(scene: &Scene<S>) -> Report {
    let s = scene;
    let t = &s.params.t;
    let mut checks = Vec::with_capacity(CHECK_NAMES.len());

    let mut c = Check::new("on_circumcircle");
    for (name, p) in [("A", &s.a), ("B", &s.b), ("C", &s.c), ("K", &s.k)] {
        on_circle(&mut c, &format!("Sigma({name})"), &s.sigma, p);
    }
    checks.push(c.finish());

    let mut c = Check::new("sigma0_through_J_and_K");
    match circle_through3(&s.a0, &s.b0, &s.c0) {
        Ok(fresh) => c.expect(fresh.near(&s.sigma0), "Sigma0", || {
            format!("{} != {}", s.sigma0, fresh)
        }),
        Err(e) => c.error("Sigma0", e),
    }
    for (name, p) in [
        ("A0", &s.a0),
        ("B0", &s.b0),
        ("C0", &s.c0),
        ("J", &s.j),
        ("K", &s.k),
    ] {
        on_circle(&mut c, &format!("Sigma0({name})"), &s.sigma0, p);
    }
    checks.push(c.finish());

    let mut c = Check::new("q_equidistant");
    let (qj, qh) = (s.q.dist2(&s.j), s.q.dist2(&s.h));
    c.expect(qj.near(&qh), "|QJ|² vs |QH|²", || format!("{qj} != {qh}"));
    checks.push(c.finish());

    let mut c = Check::new("q_is_image_of_H");
    c.same_point("similarity(H)", &apply_similarity(t, &s.h), &s.q);
    match orthocenter3(&s.a0, &s.b0, &s.c0) {
        Ok(h0) => c.same_point("orthocentre(A0B0C0)", &h0, &s.q),
        Err(e) => c.error("orthocentre(A0B0C0)", e),
    }
    checks.push(c.finish());

    let mut c = Check::new("similarity_ratio");
    let sim = Similarity::new(t.clone());
    let four = t.int(4);
    let ratio = four.clone() * sim.scale2();
    for v in Vertex::ALL {
        let (p, p0) = (s.vertex(v), s.image(v));
        c.same_point(&format!("similarity({})", v.name()), &sim.apply(p), p0);
        let lhs = four.clone() * p0.norm2();
        let rhs = ratio.clone() * p.norm2();
        c.expect(
            lhs.near(&rhs),
            format!("4|J{0}0|² vs (1+4t²)|J{0}|²", v.name()),
            || format!("{lhs} != {rhs}"),
        );
    }
    checks.push(c.finish());

    let mut c = Check::new("perspector_common");
    c.same_point("K formula", &perspector_k(t), &s.k);
    for v in Vertex::ALL {
        let label = format!("{0}{0}0 ∩ Sigma", v.name());
        match line_through(s.vertex(v), s.image(v))
            .and_then(|l| second_line_circle(&l, &s.sigma, s.vertex(v)))
        {
            Ok(meet) => c.same_point(&label, &meet.point, &s.k),
            Err(e) => c.error(&label, e),
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("xyz_incidences");
    for v in Vertex::ALL {
        let p = s.altitude_point(v);
        let name = v.altitude_point();
        on_line(
            &mut c,
            &format!("alt{}({name})", v.name()),
            s.altitude(v),
            p,
        );
        on_circle(
            &mut c,
            &format!("c{}({name})", v.name()),
            s.vertex_circle(v),
            p,
        );
        on_circle(&mut c, &format!("S({name})"), &s.hagge, p);
    }
    checks.push(c.finish());

    let mut c = Check::new("hagge_center_and_members");
    c.same_point("centre(S)", &s.hagge.center(), &s.q);
    on_circle(&mut c, "S(J)", &s.hagge, &s.j);
    on_circle(&mut c, "S(H)", &s.hagge, &s.h);
    checks.push(c.finish());

    for (v, name) in [
        (Vertex::A, "L_on_BC"),
        (Vertex::B, "M_on_CA"),
        (Vertex::C, "N_on_AB"),
    ] {
        let mut c = Check::new(name);
        let (u, w) = v.others();
        let label = format!("side{}{}({})", u.name(), w.name(), v.side_point());
        on_line(&mut c, &label, s.side(v), s.side_point(v));
        checks.push(c.finish());
    }

    let mut c = Check::new("lmn_collinear");
    c.expect(collinear3(&s.l, &s.m, &s.n), "det(L, M, N)", || {
        format!("L={} M={} N={}", s.l, s.m, s.n)
    });
    for v in Vertex::ALL {
        on_line(
            &mut c,
            &format!("gwsLine({})", v.side_point()),
            &s.gws,
            s.side_point(v),
        );
    }
    checks.push(c.finish());

    let mut c = Check::new("q_on_line");
    on_line(&mut c, "gwsLine(Q)", &s.gws, &s.q);
    checks.push(c.finish());

    let mut c = Check::new("reflection_route_equals_radical_route");
    for v in Vertex::ALL {
        let reflected = reflect_in_line(&s.j, s.image_side(v));
        c.same_point(
            &format!("reflection for {}", v.side_point()),
            &reflected,
            s.side_point(v),
        );
    }
    checks.push(c.finish());

    let mut c = Check::new("line_equals_double_simson_of_image");
    match double_simson_line(&s.j, &s.a0, &s.b0, &s.c0) {
        Ok(line) => c.same_line("double Simson of A0B0C0", &line, &s.gws),
        Err(e) => c.error("double Simson of A0B0C0", e),
    }
    checks.push(c.finish());

    checks.push(equal_oblique_tangents(s));
    checks.push(concyclic_chains(s));
    checks.push(t_zero_reduction(s));

    let mut c = Check::new("double_simson_of_ABC_through_H");
    match double_simson_line(&s.j, &s.a, &s.b, &s.c) {
        Ok(line) => on_line(&mut c, "double Simson of ABC (H)", &line, &s.h),
        Err(e) => c.error("double Simson of ABC", e),
    }
    checks.push(c.finish());

    debug_assert!(checks.iter().map(|c| c.name).eq(CHECK_NAMES));
    Report {
        backend: S::BACKEND.as_str(),
        params: [
            ("a", s.params.a.to_string()),
            ("b", s.params.b.to_string()),
            ("c", s.params.c.to_string()),
            ("t", s.params.t.to_string()),
        ],
        checks,
        flags: s.flags.iter().map(ToString::to_string).collect(),
    }
}

/// Each line `J L` (resp. `J M`, `J N`) turns onto its side by the same
/// directed angle, whose tangent is `1/(2t)` (a right angle when `t = 0`).
fn equal_oblique_tangents<S: Scalar>(s: &Scene<S>) -> CheckResult {
    let mut c = Check::new("equal_oblique_tangents");
    let t = &s.params.t;
    let expected = if t.is_zero() {
        DirectedTan::Infinite
    } else {
        DirectedTan::Finite(
            t.one_like()
                .checked_div(&(t.int(2) * t.clone()))
                .expect("t ≠ 0"),
        )
    };
    for v in Vertex::ALL {
        let p = s.side_point(v);
        if p.near(&s.j) {
            continue;
        }
        let label = format!("tan(J{}, side)", v.side_point());
        match line_through(&s.j, p) {
            Ok(jl) => {
                let got = directed_tan(&jl, s.side(v));
                c.expect(got.near(&expected), label, || {
                    format!("{got} != {expected}")
                });
            }
            Err(e) => c.error(&label, e),
        }
    }
    c.finish()
}

/// Concyclic quadruples on the three vertex circles and on Σ.
fn concyclic_chains<S: Scalar>(s: &Scene<S>) -> CheckResult {
    let mut c = Check::new("concyclic_chains_thm41");
    let quads: [(&str, [&Point<S>; 4]); 10] = [
        ("J,L,B,Y", [&s.j, &s.l, &s.b, &s.y]),
        ("J,L,C,Z", [&s.j, &s.l, &s.c, &s.z]),
        ("J,M,C,Z", [&s.j, &s.m, &s.c, &s.z]),
        ("J,M,A,X", [&s.j, &s.m, &s.a, &s.x]),
        ("J,N,A,X", [&s.j, &s.n, &s.a, &s.x]),
        ("J,N,B,Y", [&s.j, &s.n, &s.b, &s.y]),
        ("J,N,L,B", [&s.j, &s.n, &s.l, &s.b]),
        ("J,L,M,C", [&s.j, &s.l, &s.m, &s.c]),
        ("J,M,N,A", [&s.j, &s.m, &s.n, &s.a]),
        ("J,A,B,C", [&s.j, &s.a, &s.b, &s.c]),
    ];
    for (label, [p, q, r, w]) in quads {
        c.expect(concyclic4(p, q, r, w), label, || {
            "not concyclic".to_string()
        });
    }
    c.finish()
}

/// At `t = 0`: L, M, N are the perpendicular feet from J, Q is the midpoint
/// of JH and the line is the classical Wallace-Simson line.
fn t_zero_reduction<S: Scalar>(s: &Scene<S>) -> CheckResult {
    let mut c = Check::new("t_zero_reduction");
    if !s.params.t.is_zero() {
        c.applicable = false;
        return c.finish();
    }
    let feet = Vertex::ALL.map(|v| foot_perpendicular(&s.j, s.side(v)));
    for (v, foot) in Vertex::ALL.iter().zip(&feet) {
        c.same_point(
            &format!("foot for {}", v.side_point()),
            s.side_point(*v),
            foot,
        );
    }
    c.same_point("midpoint(J, H)", &s.q, &midpoint(&s.j, &s.h));
    let pair = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(i, k)| !feet[i].near(&feet[k]));
    match pair.map(|(i, k)| line_through(&feet[i], &feet[k])) {
        Some(Ok(classical)) => c.same_line("classical line", &s.gws, &classical),
        Some(Err(e)) => c.error("classical line", e),
        None => c.error("classical line", "feet coincide"),
    }
    c.finish()
}
