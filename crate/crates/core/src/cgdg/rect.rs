//! Closed-form edge predicate for axis-aligned `l × s` rectangles.
//!
//! Scaling `y` by `l/s` turns every rectangle homothet into an axis-aligned
//! square. After swapping axes and reflecting so that `q - p` has
//! `dx ≥ dy ≥ 0`, the squares of side `dx` with `p` on the left side and `q`
//! on the right side form a closed family indexed by the bottom coordinate
//! `y_b ∈ [q.y - dx, p.y]`. Every larger square through `p` and `q` contains
//! one of the two extreme members, so this family alone decides the edge.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{on_open_segment, ConvexShape, Homothet, Point, BOUNDARY_TOL};
use crate::visibility::{build_visibility_graph, visible, Instance};

use super::sweep::{sweep, PointCheck, SweepInput, SweepOutcome};
use super::{collect_edges, relevant_vertices, BuildOptions, CgdgGraph, EdgeDecision};

#[derive(Debug, Clone, Copy)]
struct Frame {
    rho: f64,
    swap: bool,
    fx: f64,
    fy: f64,
}

impl Frame {
    fn new(p: Point, q: Point, rho: f64) -> Self {
        let (mut a, mut b) = (Point::new(p.x, rho * p.y), Point::new(q.x, rho * q.y));
        let swap = (b.y - a.y).abs() > (b.x - a.x).abs();
        if swap {
            a = Point::new(a.y, a.x);
            b = Point::new(b.y, b.x);
        }
        let fx = if b.x < a.x { -1.0 } else { 1.0 };
        let fy = if b.y < a.y { -1.0 } else { 1.0 };
        Frame { rho, swap, fx, fy }
    }

    fn forward(&self, p: Point) -> Point {
        let mut z = Point::new(p.x, self.rho * p.y);
        if self.swap {
            z = Point::new(z.y, z.x);
        }
        Point::new(self.fx * z.x, self.fy * z.y)
    }

    fn inverse(&self, z: Point) -> Point {
        let mut z = Point::new(self.fx * z.x, self.fy * z.y);
        if self.swap {
            z = Point::new(z.y, z.x);
        }
        Point::new(z.x, z.y / self.rho)
    }
}

fn check_dims(l: f64, s: f64) -> Result<()> {
    if !(s > 0.0) || !(l >= s) || !l.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "rectangle needs l >= s > 0, got l={l}, s={s}"
        )));
    }
    Ok(())
}

fn decide<F: Fn(usize, usize) -> bool>(
    inst: &Instance,
    shape: &Arc<ConvexShape>,
    l: f64,
    s: f64,
    p: usize,
    q: usize,
    vis: F,
) -> Result<EdgeDecision> {
    if p == q || !vis(p, q) {
        return Ok(EdgeDecision::Absent);
    }
    let (pp, pq) = (inst.point(p), inst.point(q));
    let relevant = relevant_vertices(inst.len(), p, q, &vis);
    if relevant
        .iter()
        .any(|&v| on_open_segment(pp, pq, inst.point(v)))
    {
        return Ok(EdgeDecision::Absent);
    }
    let frame = Frame::new(pp, pq, l / s);
    let (a, b) = (frame.forward(pp), frame.forward(pq));
    let dx = b.x - a.x;
    let local: Vec<(usize, Point)> = relevant
        .iter()
        .map(|&v| (v, frame.forward(inst.point(v))))
        .collect();
    let intervals = local
        .iter()
        .filter(|(_, z)| z.x > a.x && z.x < b.x)
        .map(|(_, z)| (z.y - dx, z.y))
        .collect();
    let input = SweepInput {
        t0: b.y - dx,
        t1: a.y,
        closed_lo: true,
        closed_hi: true,
        intervals,
    };
    let extent = a.x.abs().max(a.y.abs()).max(b.x.abs()).max(b.y.abs()) + dx;
    let tol = BOUNDARY_TOL * extent.max(1.0);
    let outcome = sweep(&input, |yb| {
        let mut on_boundary = Vec::new();
        for &(v, z) in &local {
            let depth = (z.x - a.x).min(b.x - z.x).min(z.y - yb).min(yb + dx - z.y);
            if depth > tol {
                return PointCheck::Occupied;
            }
            if depth >= -tol {
                on_boundary.push(v);
            }
        }
        if on_boundary.len() >= 2 {
            PointCheck::Ambiguous(format!(
                "vertices {on_boundary:?} share a rectangle boundary with the pair"
            ))
        } else {
            PointCheck::Empty
        }
    });
    Ok(match outcome {
        SweepOutcome::Witness(yb) => {
            let center = frame.inverse(Point::new(a.x + 0.5 * dx, yb + 0.5 * dx));
            EdgeDecision::Witness(Homothet::new(shape.clone(), center, dx / l)?)
        }
        SweepOutcome::Absent => EdgeDecision::Absent,
        SweepOutcome::Ambiguous(d) => EdgeDecision::Ambiguous(d),
    })
}

/// The edge predicate for `pq` under an axis-aligned `l × s` rectangle.
pub fn rect_edge_decision(
    inst: &Instance,
    l: f64,
    s: f64,
    p: usize,
    q: usize,
) -> Result<EdgeDecision> {
    check_dims(l, s)?;
    let shape = Arc::new(ConvexShape::rectangle(l, s)?);
    decide(inst, &shape, l, s, p, q, |a, b| visible(inst, a, b))
}

pub fn build_rect_cgdg(inst: &Instance, l: f64, s: f64) -> Result<CgdgGraph> {
    build_rect_cgdg_with(inst, l, s, BuildOptions::default())
}

pub fn build_rect_cgdg_with(
    inst: &Instance,
    l: f64,
    s: f64,
    opts: BuildOptions,
) -> Result<CgdgGraph> {
    check_dims(l, s)?;
    let shape = Arc::new(ConvexShape::rectangle(l, s)?);
    let vg = build_visibility_graph(inst);
    let decider = |u: usize, v: usize| decide(inst, &shape, l, s, u, v, |a, b| vg.is_visible(a, b));
    let (edges, diagnostics) = collect_edges(inst, &shape, &vg, opts, &decider)?;
    Ok(CgdgGraph::assemble(
        inst.clone(),
        shape,
        edges,
        diagnostics,
        Some((l, s)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgdg::{build_cgdg, GeneralPositionPolicy};

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn frame_round_trips() {
        for (p, q) in [
            (pt(0., 0.), pt(3., 1.)),
            (pt(0., 0.), pt(-1., 4.)),
            (pt(2., 1.), pt(-3., -2.)),
            (pt(0., 0.), pt(0.5, -3.)),
        ] {
            let f = Frame::new(p, q, 2.0);
            let (a, b) = (f.forward(p), f.forward(q));
            assert!(b.x - a.x >= b.y - a.y && b.y >= a.y, "{a:?} {b:?}");
            for z in [p, q, pt(0.3, -0.7)] {
                assert!((f.inverse(f.forward(z)) - z).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn wide_rectangle_example() {
        let inst = Instance::new(vec![pt(0., 0.), pt(4., 0.), pt(2., 0.5)], vec![]).unwrap();
        let g = build_rect_cgdg(&inst, 4.0, 1.0).unwrap();
        assert!(g.has_edge(0, 2) && g.has_edge(1, 2));
        // y_b ranges over [-1, 0]; (2, 0.5) is interior for y_b in (-0.5, 0.5)
        assert!(g.has_edge(0, 1));
        let w = &g.edge(0, 1).unwrap().witness;
        assert!(w.on_boundary(inst.point(0)) && w.on_boundary(inst.point(1)));
        assert!(w.depth(inst.point(2)) <= w.tolerance());
    }

    #[test]
    fn square_corners_match_generic_path() {
        let inst =
            Instance::new(vec![pt(0., 0.), pt(1., 0.), pt(1., 1.), pt(0., 1.)], vec![]).unwrap();
        assert!(matches!(
            build_rect_cgdg(&inst, 1.0, 1.0),
            Err(Error::GeneralPositionViolation { .. })
        ));
        let opts = BuildOptions {
            policy: GeneralPositionPolicy::Lenient,
            ..Default::default()
        };
        let g = build_rect_cgdg_with(&inst, 1.0, 1.0, opts).unwrap();
        assert_eq!(g.edge_pairs(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn witnesses_touch_both_endpoints() {
        let inst = Instance::new(
            vec![
                pt(0., 0.),
                pt(3., 1.),
                pt(1., 2.5),
                pt(-1., 1.7),
                pt(2.2, -1.1),
                pt(0.4, 0.9),
            ],
            vec![[0, 1]],
        )
        .unwrap();
        let g = build_rect_cgdg(&inst, 2.0, 1.0).unwrap();
        for e in &g.edges {
            assert!(e.witness.on_boundary(inst.point(e.u)), "{e:?}");
            assert!(e.witness.on_boundary(inst.point(e.v)), "{e:?}");
        }
        let generic =
            build_cgdg(&inst, &Arc::new(ConvexShape::rectangle(2.0, 1.0).unwrap())).unwrap();
        assert_eq!(g.edge_pairs(), generic.edge_pairs());
    }
}
