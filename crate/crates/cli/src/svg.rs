//! SVG figure of a scene.
//!
//! The view box is the bounding box of the finite points, widened by 10% of
//! its larger side on every edge. The y axis is flipped, so the figure reads
//! in the usual orientation. Elements come in a fixed order: points, then
//! lines clipped to the view box, then circles, each group sorted by name.
//! Coordinates are written with six decimals, so the output is
//! byte-for-byte reproducible.

use std::fmt::Write as _;

use simson_core::{Circle, Line, Point, Scalar, Scene};

const WIDTH_PX: f64 = 800.0;
const MARGIN: f64 = 0.1;

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[derive(Debug, Clone, Copy)]
struct ViewBox {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl ViewBox {
    fn fit(points: &[(f64, f64)]) -> Self {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for (i, &(x, y)) in points.iter().enumerate() {
            if i == 0 {
                (min_x, max_x, min_y, max_y) = (x, x, y, y);
            }
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        let span = (max_x - min_x).max(max_y - min_y);
        // a single point still gets a unit box
        let pad = if span > 0.0 { MARGIN * span } else { 0.5 };
        ViewBox {
            min_x: min_x - pad,
            max_x: max_x + pad,
            min_y: min_y - pad,
            max_y: max_y + pad,
        }
    }

    fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    /// Length of one output pixel in scene units.
    fn unit(&self) -> f64 {
        self.width() / WIDTH_PX
    }

    /// Portion of `ax + by + c = 0` inside the box, if any.
    fn clip(&self, a: f64, b: f64, c: f64) -> Option<((f64, f64), (f64, f64))> {
        let n2 = a * a + b * b;
        if !n2.is_finite() || n2 == 0.0 {
            return None;
        }
        let p = (-a * c / n2, -b * c / n2);
        let d = (b, -a);
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (p0, d0, min, max) in [
            (p.0, d.0, self.min_x, self.max_x),
            (p.1, d.1, self.min_y, self.max_y),
        ] {
            if d0 == 0.0 {
                if p0 < min || p0 > max {
                    return None;
                }
            } else {
                let (s1, s2) = ((min - p0) / d0, (max - p0) / d0);
                lo = lo.max(s1.min(s2));
                hi = hi.min(s1.max(s2));
            }
        }
        (lo < hi).then_some((
            (p.0 + lo * d.0, p.1 + lo * d.1),
            (p.0 + hi * d.0, p.1 + hi * d.1),
        ))
    }
}

fn point_f64<S: Scalar>(p: &Point<S>) -> Option<(f64, f64)> {
    let (x, y) = (p.x.to_f64(), p.y.to_f64());
    (x.is_finite() && y.is_finite()).then_some((x, y))
}

fn line_style(name: &str) -> &'static str {
    match name {
        "gwsLine" => r##"stroke="#c0392b" stroke-width="2""##,
        n if n.starts_with("alt") => {
            r##"stroke="#7f8c8d" stroke-width="1" stroke-dasharray="4 3""##
        }
        n if n.ends_with("0") => r##"stroke="#2471a3" stroke-width="1""##,
        _ => r##"stroke="#000000" stroke-width="1""##,
    }
}

fn circle_style(name: &str) -> &'static str {
    match name {
        "Sigma" => r##"stroke="#000000" stroke-width="1""##,
        "Sigma0" => r##"stroke="#2471a3" stroke-width="1""##,
        "S" => r##"stroke="#1e8449" stroke-width="1.5""##,
        _ => r##"stroke="#b3b6b7" stroke-width="1""##,
    }
}

/// Renders the scene as a standalone SVG document.
pub fn render_svg<S: Scalar>(scene: &Scene<S>) -> String {
    let mut points: Vec<(&str, (f64, f64))> = scene
        .points()
        .into_iter()
        .filter_map(|(name, p)| point_f64(p).map(|xy| (name, xy)))
        .collect();
    points.sort_by(|a, b| a.0.cmp(b.0));
    let coords: Vec<(f64, f64)> = points.iter().map(|(_, xy)| *xy).collect();
    let vb = ViewBox::fit(&coords);
    let unit = vb.unit();
    let height_px = (WIDTH_PX * vb.height() / vb.width()).round();

    let p = &scene.params;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        WIDTH_PX,
        height_px,
        num(vb.min_x),
        num(-vb.max_y),
        num(vb.width()),
        num(vb.height())
    );
    let _ = writeln!(
        out,
        "<title>{}</title>",
        escape(&format!("a={} b={} c={} t={}", p.a, p.b, p.c, p.t))
    );
    let _ = writeln!(
        out,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#ffffff"/>"##,
        num(vb.min_x),
        num(-vb.max_y),
        num(vb.width()),
        num(vb.height())
    );

    out.push_str("<g id=\"points\" fill=\"#000000\">\n");
    let font = num(12.0 * unit);
    for (name, (x, y)) in &points {
        let _ = writeln!(
            out,
            r#"<circle id="pt-{n}" cx="{}" cy="{}" r="{}"/>"#,
            num(*x),
            num(-y),
            num(2.0 * unit),
            n = escape(name)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="{font}" font-family="sans-serif">{}</text>"#,
            num(x + 4.0 * unit),
            num(-y - 4.0 * unit),
            escape(name)
        );
    }
    out.push_str("</g>\n");

    let mut lines: Vec<(&str, &Line<S>)> = scene.lines().into_iter().collect();
    lines.sort_by(|a, b| a.0.cmp(b.0));
    out.push_str("<g id=\"lines\" fill=\"none\">\n");
    for (name, l) in lines {
        if let Some(((x1, y1), (x2, y2))) = vb.clip(l.a.to_f64(), l.b.to_f64(), l.c.to_f64()) {
            let _ = writeln!(
                out,
                r#"<line id="ln-{}" x1="{}" y1="{}" x2="{}" y2="{}" {} vector-effect="non-scaling-stroke"/>"#,
                escape(name),
                num(x1),
                num(-y1),
                num(x2),
                num(-y2),
                line_style(name)
            );
        }
    }
    out.push_str("</g>\n");

    let mut circles: Vec<(&str, &Circle<S>)> = scene.circles().into_iter().collect();
    circles.sort_by(|a, b| a.0.cmp(b.0));
    out.push_str("<g id=\"circles\" fill=\"none\">\n");
    for (name, c) in circles {
        let center = c.center();
        let r2 = c.radius2().to_f64();
        let Some((cx, cy)) = point_f64(&center) else {
            continue;
        };
        if !(r2.is_finite() && r2 > 0.0) {
            continue;
        }
        let _ = writeln!(
            out,
            r#"<circle id="cr-{}" cx="{}" cy="{}" r="{}" {} vector-effect="non-scaling-stroke"/>"#,
            escape(name),
            num(cx),
            num(-cy),
            num(r2.sqrt()),
            circle_style(name)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
