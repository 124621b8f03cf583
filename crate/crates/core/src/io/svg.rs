//! SVG 1.1 drawing of an instance and, optionally, a tree on it.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::geom::{Color, Point, PointSet};
use crate::tree::Tree;

/// Red and blue disks, black tree edges, dummies as hollow red circles. The
/// y axis points up.
pub fn render_svg(ps: &PointSet, t: Option<&Tree>) -> String {
    let xy = |p: &Point| (p.x.to_f64().unwrap_or(0.0), -p.y.to_f64().unwrap_or(0.0));
    let coords: Vec<(f64, f64)> = ps.iter().map(xy).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in &coords {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if coords.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let r = span / 100.0;
    let pad = 4.0 * r;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        x0 - pad,
        y0 - pad,
        x1 - x0 + 2.0 * pad,
        y1 - y0 + 2.0 * pad
    );
    let _ = writeln!(
        s,
        r#"<g id="edges" stroke="black" stroke-width="{}">"#,
        r / 3.0
    );
    if let Some(t) = t {
        for &(a, b) in t.edges() {
            if let (Some(p), Some(q)) = (ps.get(a), ps.get(b)) {
                let ((ax, ay), (bx, by)) = (xy(p), xy(q));
                let _ = writeln!(s, r#"<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"/>"#);
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g id="points">"#);
    for (p, &(x, y)) in ps.iter().zip(&coords) {
        let fill = match p.color {
            Color::Red => "#d62728",
            Color::Blue => "#1f77b4",
        };
        if p.is_dummy() {
            let _ = writeln!(
                s,
                r#"<circle cx="{x}" cy="{y}" r="{r}" fill="none" stroke="{fill}" stroke-width="{}"><title>{}</title></circle>"#,
                r / 3.0,
                p.id
            );
        } else {
            let _ = writeln!(
                s,
                r#"<circle cx="{x}" cy="{y}" r="{r}" fill="{fill}"><title>{}</title></circle>"#,
                p.id
            );
        }
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}
