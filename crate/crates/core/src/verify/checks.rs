use serde::Serialize;
use serde_json::json;

use crate::cgdg::CgdgGraph;
use crate::constants::{rect_bound, theorem1_bound};
use crate::error::Result;
use crate::geom::{on_open_segment, properly_intersect, Point};
use crate::visibility::{build_visibility_graph, in_open_triangle, VisibilityGraph};

use super::faces::is_triangulation;
use super::paths::all_pairs_shortest_paths;
use super::Verdict;

/// Relative slack for path-length comparisons.
const REL_TOL: f64 = 1e-9;
/// Absolute slack for comparisons against bounds.
const ABS_TOL: f64 = 1e-9;

pub fn check_planarity_edges(points: &[Point], edges: &[(usize, usize)]) -> Verdict {
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if properly_intersect(points[a], points[b], points[c], points[d]) {
                return Verdict::fail("planarity", json!({ "edges": [[a, b], [c, d]] }));
            }
        }
    }
    Verdict::pass("planarity")
}

pub fn check_planarity(g: &CgdgGraph) -> Verdict {
    check_planarity_edges(g.instance.points(), &g.edge_pairs())
}

/// Apexes of the two isosceles triangles on `pq` with base angle `alpha`.
pub(crate) fn diamond_apexes(p: Point, q: Point, alpha: f64) -> (Point, Point) {
    let m = p.midpoint(q);
    let h = (q - p).perp() * (0.5 * alpha.tan());
    (m + h, m - h)
}

pub fn check_diamond(g: &CgdgGraph, alpha: f64) -> Verdict {
    let inst = &g.instance;
    let vg = build_visibility_graph(inst);
    let mut failures = Vec::new();
    for e in g.edges.iter().filter(|e| !e.forced) {
        let (p, q) = (inst.point(e.u), inst.point(e.v));
        let (left, right) = diamond_apexes(p, q, alpha);
        let inside = |apex: Point| -> Vec<usize> {
            (0..inst.len())
                .filter(|&x| x != e.u && x != e.v && vg.is_visible(e.u, x) && vg.is_visible(e.v, x))
                .filter(|&x| in_open_triangle(p, q, apex, inst.point(x)))
                .collect()
        };
        let (l, r) = (inside(left), inside(right));
        if !l.is_empty() && !r.is_empty() {
            failures.push(json!({ "edge": [e.u, e.v], "left": l, "right": r }));
        }
    }
    if failures.is_empty() {
        Verdict::pass("diamond")
    } else {
        Verdict::fail("diamond", json!({ "alpha": alpha, "failures": failures }))
    }
}

/// Non-adjacent visible pairs whose open segment lies inside a single face:
/// it crosses no edge and passes through no vertex.
pub fn qualifying_pairs(g: &CgdgGraph, vg: &VisibilityGraph) -> Vec<(usize, usize)> {
    let pts = g.instance.points();
    let edges = g.edge_pairs();
    let mut out = Vec::new();
    for (u, v) in vg.edges() {
        if g.has_edge(u, v) {
            continue;
        }
        let (a, b) = (pts[u], pts[v]);
        if edges
            .iter()
            .any(|&(c, d)| properly_intersect(a, b, pts[c], pts[d]))
        {
            continue;
        }
        if (0..pts.len()).any(|x| x != u && x != v && on_open_segment(a, b, pts[x])) {
            continue;
        }
        out.push((u, v));
    }
    out
}

pub fn check_visible_pair(g: &CgdgGraph, kappa: f64) -> Verdict {
    let pts = g.instance.points();
    let vg = build_visibility_graph(&g.instance);
    let dist = all_pairs_shortest_paths(pts, &g.adjacency);
    let pairs = qualifying_pairs(g, &vg);
    let mut failures = Vec::new();
    for &(u, v) in &pairs {
        let bound = kappa * pts[u].dist(pts[v]);
        if !(dist[u][v] <= bound + ABS_TOL) {
            failures.push(json!({ "pair": [u, v], "path": dist[u][v], "bound": bound }));
        }
    }
    let note = format!("{} qualifying pairs", pairs.len());
    if failures.is_empty() {
        Verdict::pass("visible_pair").with_note(note)
    } else {
        Verdict::fail(
            "visible_pair",
            json!({ "kappa": kappa, "failures": failures }),
        )
        .with_note(note)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairRatio {
    pub u: usize,
    pub v: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StretchReport {
    pub max_ratio: f64,
    pub argmax_pair: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_pair: Option<Vec<PairRatio>>,
    pub bound_used: f64,
    pub passed: bool,
    pub is_triangulation: bool,
    /// A pair connected in the visibility graph but not in the graph.
    pub disconnected_pair: Option<(usize, usize)>,
}

impl StretchReport {
    pub fn verdict(&self, property: &str) -> Verdict {
        if self.passed {
            return Verdict::pass(property);
        }
        Verdict::fail(
            property,
            json!({
                "max_ratio": self.max_ratio,
                "argmax_pair": self.argmax_pair,
                "bound": self.bound_used,
                "disconnected_pair": self.disconnected_pair,
            }),
        )
    }
}

/// Maximum of `δ_G(u, v) / |uv|` over visible pairs, which equals the
/// maximum of `δ_G / δ_Vis` over all pairs.
pub fn stretch_with_bound(g: &CgdgGraph, bound: f64, keep_pairs: bool) -> StretchReport {
    let pts = g.instance.points();
    let vg = build_visibility_graph(&g.instance);
    let dist = all_pairs_shortest_paths(pts, &g.adjacency);
    let mut max_ratio = 1.0;
    let mut argmax = None;
    let mut disconnected = None;
    let mut per_pair = keep_pairs.then(Vec::new);
    for (u, v) in vg.edges() {
        let d = dist[u][v];
        if d.is_infinite() {
            disconnected.get_or_insert((u, v));
            continue;
        }
        let ratio = d / pts[u].dist(pts[v]);
        if let Some(t) = per_pair.as_mut() {
            t.push(PairRatio { u, v, ratio });
        }
        if argmax.is_none() || ratio > max_ratio * (1.0 + REL_TOL) {
            max_ratio = ratio;
            argmax = Some((u, v));
        }
    }
    // a path is never shorter than the segment; clamp rounding
    let max_ratio = max_ratio.max(1.0);
    StretchReport {
        max_ratio,
        argmax_pair: argmax,
        per_pair,
        bound_used: bound,
        passed: disconnected.is_none() && max_ratio <= bound + ABS_TOL,
        is_triangulation: is_triangulation(pts, &g.adjacency),
        disconnected_pair: disconnected,
    }
}

/// Stretch against the bound for the detected case.
pub fn measure_stretch(g: &CgdgGraph, alpha: f64, kappa: f64) -> Result<StretchReport> {
    let tri = is_triangulation(g.instance.points(), &g.adjacency);
    let bound = theorem1_bound(alpha, kappa, tri)?;
    Ok(stretch_with_bound(g, bound, false))
}

pub fn check_rect_bound(g: &CgdgGraph, l: f64, s: f64) -> Result<(Verdict, StretchReport)> {
    let report = stretch_with_bound(g, rect_bound(l, s)?, false);
    Ok((report.verdict("rect_bound"), report))
}
