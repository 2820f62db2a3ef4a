//! Deterministic SVG figures: the obstacle, its half-plane boundaries and
//! any number of labelled routes.

use std::fmt::Write;

use crate::geometry::{ConvexPolygon, Point, Polyline};
use crate::online::{OnlineTrace, Phase};

const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// A route drawn as one or more groups (one per phase for online traces).
#[derive(Debug, Clone, PartialEq)]
pub struct SvgRoute {
    pub label: String,
    pub groups: Vec<(String, Vec<Point>)>,
}

impl SvgRoute {
    pub fn plain(label: impl Into<String>, path: &Polyline) -> Self {
        let label = label.into();
        Self { groups: vec![(label.clone(), path.points().to_vec())], label }
    }

    /// Splits the trace at the phase boundaries; empty phases are skipped.
    pub fn phased(label: impl Into<String>, trace: &OnlineTrace) -> Self {
        let groups = [Phase::I, Phase::II, Phase::III]
            .into_iter()
            .filter_map(|ph| {
                let (a, b) = trace.phase_range(ph);
                (b > a).then(|| (ph.as_str().to_string(), sub_path(&trace.path, a, b)))
            })
            .collect();
        Self { label: label.into(), groups }
    }
}

/// The part of `path` between arc lengths `a` and `b`.
pub fn sub_path(path: &Polyline, a: f64, b: f64) -> Vec<Point> {
    let mut out = vec![path.point_at(a)];
    for (p, &s) in path.points().iter().zip(path.cumulative_lengths()) {
        if s > a && s < b {
            out.push(*p);
        }
    }
    out.push(path.point_at(b));
    out
}

pub fn render_svg(poly: &ConvexPolygon, start: Option<Point>, routes: &[SvgRoute]) -> String {
    let mut pts: Vec<Point> = poly.vertices().to_vec();
    pts.extend(start);
    for r in routes {
        for (_, g) in &r.groups {
            pts.extend(g.iter().copied());
        }
    }
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in &pts {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
    let margin = 0.1 * span;
    let (x0, y0) = (lo.x - margin, -(hi.y + margin));
    let (w, h) = (hi.x - lo.x + 2.0 * margin, hi.y - lo.y + 2.0 * margin);
    let stroke = 0.004 * span;
    let xy = |p: Point| format!("{:.6},{:.6}", p.x, -p.y);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.6} {y0:.6} {w:.6} {h:.6}" width="800" height="{:.0}">"#,
        800.0 * h / w
    );
    let _ = writeln!(
        s,
        r##"<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="{0:.6}" height="{0:.6}" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="{0:.6}" stroke="#444" stroke-width="{1:.6}"/></pattern></defs>"##,
        0.03 * span,
        stroke
    );
    let _ = writeln!(
        s,
        r##"<g id="half-planes" stroke="#999" stroke-width="{:.6}" stroke-dasharray="{:.6}">"##,
        stroke * 0.5,
        stroke * 3.0
    );
    for i in 0..poly.len() {
        let a = poly.vertex(i);
        let d = poly.vertex(i + 1) - a;
        let d = d * (3.0 * span / d.norm());
        let (p, q) = (a - d, a + d);
        let _ =
            writeln!(s, r#"<line data-edge="{i}" x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#, p.x, -p.y, q.x, -q.y);
    }
    s.push_str("</g>\n");
    let verts: Vec<String> = poly.vertices().iter().map(|&p| xy(p)).collect();
    let _ = writeln!(
        s,
        r#"<polygon id="obstacle" points="{}" fill="url(#hatch)" stroke="black" stroke-width="{stroke:.6}"/>"#,
        verts.join(" ")
    );
    for (k, r) in routes.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(s, r#"<g class="route" data-label="{}" stroke="{color}" fill="none">"#, escape(&r.label));
        for (j, (name, g)) in r.groups.iter().enumerate() {
            let line: Vec<String> = g.iter().map(|&p| xy(p)).collect();
            let dash = if j % 2 == 1 { format!(r#" stroke-dasharray="{:.6}""#, stroke * 4.0) } else { String::new() };
            let _ = writeln!(
                s,
                r#"<g class="phase" data-phase="{0}"><title>{0}</title><polyline points="{1}" stroke-width="{2:.6}"{3}/></g>"#,
                escape(name),
                line.join(" "),
                stroke * 1.5,
                dash
            );
        }
        s.push_str("</g>\n");
    }
    if let Some(p) = start {
        let _ = writeln!(
            s,
            r#"<circle id="start" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="black"/>"#,
            p.x,
            -p.y,
            stroke * 3.0
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(
    path: &std::path::Path,
    poly: &ConvexPolygon,
    start: Option<Point>,
    routes: &[SvgRoute],
) -> std::io::Result<()> {
    std::fs::write(path, render_svg(poly, start, routes))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
