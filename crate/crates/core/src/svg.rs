//! SVG drawings of constructed graphs.

use std::fmt::Write;

use crate::cgdg::CgdgGraph;
use crate::geom::Point;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SvgOptions {
    /// Pair drawn as a highlighted straight line, typically the stretch argmax.
    pub highlight: Option<(usize, usize)>,
    /// Outline each edge's witness homothet.
    pub witnesses: bool,
}

/// Maps instance coordinates into the canvas with `y` pointing up.
struct Frame {
    x0: f64,
    y0: f64,
    k: f64,
}

impl Frame {
    fn new(points: &[Point]) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for p in points {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        let span = (x1 - x0).max(y1 - y0);
        let k = if span > 0.0 && span.is_finite() {
            (SIZE - 2.0 * MARGIN) / span
        } else {
            1.0
        };
        Frame {
            x0: if x0.is_finite() { x0 } else { 0.0 },
            y0: if y0.is_finite() { y0 } else { 0.0 },
            k,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (
            MARGIN + (p.x - self.x0) * self.k,
            SIZE - MARGIN - (p.y - self.y0) * self.k,
        )
    }
}

/// One `<polyline>` per graph edge; constraints dashed underneath.
pub fn render_svg(g: &CgdgGraph, opts: SvgOptions) -> String {
    let pts = g.instance.points();
    let f = Frame::new(pts);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if opts.witnesses {
        let _ = writeln!(
            s,
            r##"<g class="witnesses" fill="none" stroke="#9ab" stroke-width="0.5">"##
        );
        for e in &g.edges {
            let poly: Vec<String> = e
                .witness
                .vertices()
                .into_iter()
                .map(|v| {
                    let (x, y) = f.map(v);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(s, r#"<polygon points="{}"/>"#, poly.join(" "));
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(
        s,
        r##"<g class="constraints" stroke="#c33" stroke-width="3" stroke-dasharray="8 5">"##
    );
    for &[a, b] in g.instance.constraints() {
        let ((x1, y1), (x2, y2)) = (f.map(pts[a]), f.map(pts[b]));
        let _ = writeln!(
            s,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r##"<g class="edges" fill="none" stroke="#222" stroke-width="1.5">"##
    );
    for e in &g.edges {
        let ((x1, y1), (x2, y2)) = (f.map(pts[e.u]), f.map(pts[e.v]));
        let _ = writeln!(s, r#"<polyline points="{x1:.2},{y1:.2} {x2:.2},{y2:.2}"/>"#);
    }
    let _ = writeln!(s, "</g>");
    if let Some((a, b)) = opts.highlight {
        let ((x1, y1), (x2, y2)) = (f.map(pts[a]), f.map(pts[b]));
        let _ = writeln!(
            s,
            r##"<line class="highlight" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#f80" stroke-width="3"/>"##
        );
    }
    let _ = writeln!(s, r##"<g class="points" fill="#06c">"##);
    for p in pts {
        let (x, y) = f.map(*p);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4"/>"#);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cgdg::build_cgdg;
    use crate::geom::ConvexShape;
    use crate::visibility::Instance;

    #[test]
    fn one_polyline_per_edge() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.1),
            Point::new(0.4, 0.9),
            Point::new(0.6, 0.4),
        ];
        let inst = Instance::new(pts, vec![[0, 2]]).unwrap();
        let g = build_cgdg(&inst, &Arc::new(ConvexShape::square())).unwrap();
        let svg = render_svg(
            &g,
            SvgOptions {
                highlight: Some((0, 1)),
                witnesses: true,
            },
        );
        assert_eq!(svg.matches("<polyline").count(), g.edges.len());
        assert_eq!(svg.matches("<polygon").count(), g.edges.len());
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches(r#"class="highlight""#).count(), 1);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
