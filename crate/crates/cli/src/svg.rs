//! Deterministic SVG 1.1 rendering of a Newton polygon. Finite sides are
//! one `<polyline>` each; the unbounded parts are dashed rays clipped to
//! the drawing box.

use std::fmt::Write;

use mellin_core::{NewtonPolygon, PolygonKind, Rational};
use num_traits::ToPrimitive;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 1.0;
const RAY: f64 = 1.5;

fn f(r: &Rational) -> f64 {
    r.to_f64().expect("finite")
}

pub fn render(n: &NewtonPolygon, title: &str) -> String {
    let vertices: Vec<(f64, f64)> = n.vertices().iter().map(|(x, y)| (f(x), f(y))).collect();
    let first = vertices[0];
    let last = *vertices.last().expect("anchor");
    // (from, direction) of each unbounded ray
    let rays: Vec<((f64, f64), (f64, f64))> = match n.kind() {
        PolygonKind::Global => vec![(first, (-1.0, 0.0)), (last, (-1.0, 0.0))],
        PolygonKind::Difference => vec![(first, (0.0, 1.0)), (last, (0.0, 1.0))],
        PolygonKind::LocalDifferential => vec![(first, (-1.0, 0.0)), (last, (0.0, 1.0))],
    };
    let xs = vertices.iter().map(|v| v.0);
    let ys = vertices.iter().map(|v| v.1);
    let min_x = xs.clone().fold(f64::INFINITY, f64::min) - MARGIN - RAY;
    let max_x = xs.fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let min_y = ys.clone().fold(f64::INFINITY, f64::min) - MARGIN;
    let max_y = ys.fold(f64::NEG_INFINITY, f64::max) + MARGIN + RAY;
    let width = (max_x - min_x) * UNIT;
    let height = (max_y - min_y) * UNIT;
    let px = |(x, y): (f64, f64)| ((x - min_x) * UNIT, (max_y - y) * UNIT);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="box"><rect x="0" y="0" width="{width:.2}" height="{height:.2}"/></clipPath></defs>"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<g clip-path="url(#box)" fill="none" stroke-width="2">"#);
    for w in vertices.windows(2) {
        let (a, b) = (px(w[0]), px(w[1]));
        let _ = writeln!(
            out,
            r#"<polyline class="side" stroke="black" points="{:.2},{:.2} {:.2},{:.2}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    let reach = (max_x - min_x).max(max_y - min_y);
    for (from, dir) in rays {
        let to = (from.0 + dir.0 * reach, from.1 + dir.1 * reach);
        let (a, b) = (px(from), px(to));
        let _ = writeln!(
            out,
            r#"<line class="ray" stroke="gray" stroke-dasharray="6,4" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    let _ = writeln!(out, "</g>");
    for v in &vertices {
        let p = px(*v);
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#, p.0, p.1);
    }
    let _ = writeln!(out, "</svg>");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
