use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::geom::{
    homothet_pair_intersection_components, orient, ContainMode, ConvexShape, Homothet,
    IntersectionComponent, Orientation, Point,
};
use crate::visibility::{region_of, visibility_cone, visible, Instance};

use super::Verdict;

/// Default sample grid per side for the half-empty conclusion.
pub const HALF_EMPTY_GRID: usize = 20;

const REL_TOL: f64 = 1e-9;

/// Length of the part of `∂h` between boundary points `a` and `b` that lies
/// left of the directed line through `base` with direction `dir`. The line
/// must pass through the homothet.
pub fn upper_arc_length(h: &Homothet, base: Point, dir: Point, a: Point, b: Point) -> Result<f64> {
    let rel = (base - h.center) * (1.0 / h.scale);
    let d = dir * (1.0 / h.scale);
    let (lo, _, hi, _) = h
        .shape
        .clip_line_rel(rel, d)
        .ok_or_else(|| Error::PreconditionViolated("line misses the homothet".into()))?;
    let per = h.perimeter();
    let s_right = h.boundary_position(base + dir * hi)?;
    let s_left = h.boundary_position(base + dir * lo)?;
    let span = (s_left - s_right).rem_euclid(per);
    let tol = h.tolerance();
    let offset = |x: Point| -> Result<f64> {
        let mut o = (h.boundary_position(x)? - s_right).rem_euclid(per);
        if o > per - tol {
            o = 0.0;
        }
        if o > span + tol {
            return Err(Error::PreconditionViolated(format!(
                "({}, {}) is not on the upper boundary",
                x.x, x.y
            )));
        }
        Ok(o.min(span))
    };
    Ok((offset(a)? - offset(b)?).abs())
}

/// The homothet centered on the line through `a` and `b` with both on its boundary.
fn spanning_homothet(shape: &Arc<ConvexShape>, a: Point, b: Point) -> Result<Homothet> {
    let dir = (b - a).normalized();
    let (lo, _, hi, _) = shape
        .clip_line_rel(Point::new(0.0, 0.0), dir)
        .ok_or(Error::DegenerateDirection)?;
    let scale = a.dist(b) / (hi - lo);
    Homothet::new(shape.clone(), a - dir * (lo * scale), scale)
}

/// Summed upper arcs of homothets through consecutive chain vertices, centered
/// on the line through the chain ends, against the upper arc of the spanning
/// homothet.
pub fn check_boundary_summation(
    shape: &Arc<ConvexShape>,
    chain: &[Point],
    homothets: &[Homothet],
) -> Result<Verdict> {
    let k = homothets.len();
    if k == 0 || chain.len() != k + 1 {
        return Err(Error::InvalidArgument(
            "need k >= 1 homothets and k + 1 chain vertices".into(),
        ));
    }
    let (first, last) = (chain[0], chain[k]);
    let sides: Vec<Orientation> = chain.iter().map(|&v| orient(first, last, v)).collect();
    let (base, dir) = if sides.iter().all(|&o| o != Orientation::Clockwise) {
        (first, (last - first).normalized())
    } else if sides.iter().all(|&o| o != Orientation::CounterClockwise) {
        (last, (first - last).normalized())
    } else {
        return Err(Error::PreconditionViolated(
            "chain vertices lie on both sides".into(),
        ));
    };
    let normal = dir.perp();

    let mut sum = 0.0;
    for (i, h) in homothets.iter().enumerate() {
        let tol = h.tolerance();
        if normal.dot(h.center - base).abs() > tol {
            return Err(Error::PreconditionViolated(format!(
                "homothet {i} is not centered on the line"
            )));
        }
        let (a, b) = (chain[i], chain[i + 1]);
        if !h.on_boundary(a) || !h.on_boundary(b) {
            return Err(Error::PreconditionViolated(format!(
                "homothet {i} misses its chain vertices"
            )));
        }
        if let Some(j) = (0..=k).find(|&j| j != i && j != i + 1 && h.depth(chain[j]) > tol) {
            return Err(Error::PreconditionViolated(format!(
                "homothet {i} contains chain vertex {j}"
            )));
        }
        sum += upper_arc_length(h, base, dir, a, b)?;
    }
    let span = spanning_homothet(shape, first, last)?;
    let bound = upper_arc_length(&span, base, dir, first, last)?;
    if sum <= bound * (1.0 + REL_TOL) {
        Ok(Verdict::pass("boundary_summation"))
    } else {
        Ok(Verdict::fail(
            "boundary_summation",
            json!({ "sum": sum, "bound": bound }),
        ))
    }
}

/// Three-side lengths of the sub-rectangles through consecutive cut points of
/// `pq` against those of the enclosing rectangle, all sharing the ratio
/// `frac = |pa| / |ra|` of the West side above the entry point.
pub fn summing_rectangles_identity(
    l: f64,
    s: f64,
    p: Point,
    q: Point,
    cuts: &[Point],
    frac: f64,
) -> Verdict {
    const NAME: &str = "summing_rectangles";
    if !(l > 0.0 && s > 0.0) || !(p.x < q.x) {
        return Verdict::not_met(NAME, "needs positive sides and p strictly West of q");
    }
    let slope = (q.y - p.y) / (q.x - p.x);
    let m = slope * l / s;
    if !(frac >= m.max(0.0) && frac <= (1.0 + m).min(1.0)) {
        return Verdict::not_met(NAME, "q does not lie on the East side for this ratio");
    }
    let d = q - p;
    let tol = 1e-12 * d.norm();
    let mut params = vec![0.0];
    for c in cuts {
        let t = (*c - p).dot(d) / d.dot(d);
        if (p + d * t).dist(*c) > tol || !(t > *params.last().unwrap() && t < 1.0) {
            return Verdict::not_met(NAME, "cuts must lie on pq in strictly increasing order");
        }
        params.push(t);
    }
    params.push(1.0);
    let pts: Vec<Point> = params
        .iter()
        .map(|&t| if t == 1.0 { q } else { p + d * t })
        .collect();

    // West and East endpoints on the sides; top side at `frac` of the height above the West point
    let three_sides = |a: Point, b: Point| {
        let w = b.x - a.x;
        let h = w * s / l;
        let top = a.y + frac * h;
        (top - a.y) + w + (top - b.y)
    };
    let whole = three_sides(p, q);
    let parts: f64 = pts.windows(2).map(|w| three_sides(w[0], w[1])).sum();
    if (parts - whole).abs() <= REL_TOL * whole.abs().max(f64::MIN_POSITIVE) {
        Verdict::pass(NAME)
    } else {
        Verdict::fail(NAME, json!({ "sum": parts, "whole": whole }))
    }
}

/// Half-empty hypothesis below `pq`, then the claim that no point of the
/// rectangle above `pq` sees a vertex of the rectangle below it. Points above
/// are sampled on a `grid × grid` lattice plus every vertex above `pq`.
pub fn check_half_empty(
    inst: &Instance,
    p: usize,
    q: usize,
    rect: &Homothet,
    grid: usize,
) -> Verdict {
    const NAME: &str = "half_empty";
    let (pp, pq) = (inst.point(p), inst.point(q));
    if pp.x == pq.x {
        return Verdict::not_met(NAME, "pq is vertical");
    }
    if !rect.on_boundary(pp) || !rect.on_boundary(pq) {
        return Verdict::not_met(NAME, "p and q must lie on the rectangle boundary");
    }
    let (west, east) = if pp.x < pq.x { (pp, pq) } else { (pq, pp) };
    let below = |z: Point| orient(west, east, z) == Orientation::Clockwise;
    let above = |z: Point| orient(west, east, z) == Orientation::CounterClockwise;
    let inside: Vec<usize> = (0..inst.len())
        .filter(|&v| v != p && v != q && rect.contains(inst.point(v), ContainMode::Closed))
        .collect();
    let lower: Vec<usize> = inside
        .iter()
        .copied()
        .filter(|&v| below(inst.point(v)))
        .collect();

    for (a, b) in [(p, q), (q, p)] {
        let cone = visibility_cone(inst, &[], a, b, rect);
        let Ok(region) = region_of(&cone, rect) else {
            return Verdict::not_met(NAME, "region construction failed");
        };
        if let Some(&v) = lower
            .iter()
            .find(|&&v| visible(inst, a, v) && region.contains(inst.point(v)))
        {
            return Verdict::not_met(
                NAME,
                format!("vertex {v} below pq is visible to {a} inside its region"),
            );
        }
    }

    let vs = rect.vertices();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for v in &vs {
        x0 = x0.min(v.x);
        x1 = x1.max(v.x);
        y0 = y0.min(v.y);
        y1 = y1.max(v.y);
    }
    let mut samples = Vec::new();
    for i in 0..grid {
        for j in 0..grid {
            let z = Point::new(
                x0 + (x1 - x0) * (i as f64 + 0.5) / grid as f64,
                y0 + (y1 - y0) * (j as f64 + 0.5) / grid as f64,
            );
            if above(z) && rect.contains(z, ContainMode::Closed) {
                samples.push(z);
            }
        }
    }
    for &y in &lower {
        let py = inst.point(y);
        if let Some(z) = samples.iter().find(|&&z| !inst.segment_blocked(z, py)) {
            return Verdict::fail(NAME, json!({ "point": z, "sees_vertex": y }));
        }
        if let Some(&x) = inside
            .iter()
            .find(|&&x| above(inst.point(x)) && visible(inst, x, y))
        {
            return Verdict::fail(NAME, json!({ "vertex": x, "sees_vertex": y }));
        }
    }
    Verdict::pass(NAME).with_note(format!(
        "{grid}x{grid} grid, {} sample points",
        samples.len()
    ))
}

/// The boundaries of two distinct homothets meet in at most two straight
/// pieces (points or segments).
pub fn check_homothet_intersection(h1: &Homothet, h2: &Homothet) -> Verdict {
    const NAME: &str = "homothet_intersection";
    if h1.center == h2.center && h1.scale == h2.scale {
        return Verdict::not_met(NAME, "homothets coincide");
    }
    let comps = homothet_pair_intersection_components(h1, h2);
    let pieces: usize = comps
        .iter()
        .map(IntersectionComponent::straight_pieces)
        .sum();
    if pieces <= 2 {
        Verdict::pass(NAME)
    } else {
        Verdict::fail(NAME, json!({ "components": comps }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn upper_arc_of_square() {
        let sq = Arc::new(ConvexShape::square());
        let h = Homothet::new(sq.clone(), pt(0., 0.), 2.0).unwrap();
        let dir = pt(1., 0.);
        // half the perimeter from (-1, 0) to (1, 0) over the top
        let l = upper_arc_length(&h, pt(-5., 0.), dir, pt(-1., 0.), pt(1., 0.)).unwrap();
        assert!((l - 4.0).abs() < 1e-12);
        let l = upper_arc_length(&h, pt(-5., 0.), dir, pt(-1., 0.5), pt(0., 1.)).unwrap();
        assert!((l - 1.5).abs() < 1e-12);
        assert!(upper_arc_length(&h, pt(-5., 0.), dir, pt(0., -1.), pt(1., 0.)).is_err());
    }

    #[test]
    fn single_homothet_is_equality() {
        let sq = Arc::new(ConvexShape::square());
        let chain = [pt(0., 0.), pt(2., 0.)];
        let h = Homothet::new(sq.clone(), pt(1., 0.), 2.0).unwrap();
        assert!(check_boundary_summation(&sq, &chain, &[h])
            .unwrap()
            .passed());
    }

    #[test]
    fn two_squares_on_the_axis() {
        let sq = Arc::new(ConvexShape::square());
        let h1 = Homothet::new(sq.clone(), pt(1., 0.), 2.0).unwrap();
        let h2 = Homothet::new(sq.clone(), pt(2.5, 0.), 1.0).unwrap();
        let chain = [pt(0., 0.), pt(2., 0.5), pt(3., 0.)];
        let v = check_boundary_summation(&sq, &chain, &[h1.clone(), h2]).unwrap();
        assert!(v.passed(), "{v:?}");
        // arcs 3.5 + 1.5 against 6 for the square of side 3
        let bad = Homothet::new(sq.clone(), pt(1., 0.), 4.0).unwrap();
        assert!(check_boundary_summation(&sq, &chain, &[bad, h1]).is_err());
    }

    #[test]
    fn summing_rectangles_examples() {
        let (p, q) = (pt(0., 0.), pt(4., 1.));
        assert!(summing_rectangles_identity(2., 1., p, q, &[], 0.6).passed());
        let cuts = [p.lerp(q, 0.25), p.lerp(q, 0.5), p.lerp(q, 0.75)];
        assert!(summing_rectangles_identity(2., 1., p, q, &cuts, 0.6).passed());
        let v = summing_rectangles_identity(2., 1., p, q, &[cuts[1], cuts[0]], 0.6);
        assert_eq!(v.status, Status::HypothesisNotMet);
        // slope 1/4 with l/s = 2 needs frac in [0.5, 1]
        assert_eq!(
            summing_rectangles_identity(2., 1., p, q, &cuts, 0.3).status,
            Status::HypothesisNotMet
        );
    }

    #[test]
    fn half_empty_examples() {
        let sq = Arc::new(ConvexShape::square());
        let rect = Homothet::new(sq.clone(), pt(1., 0.), 2.0).unwrap();
        let empty = Instance::new(vec![pt(0., 0.), pt(2., 0.)], vec![]).unwrap();
        assert!(check_half_empty(&empty, 0, 1, &rect, HALF_EMPTY_GRID).passed());

        let open = Instance::new(vec![pt(0., 0.), pt(2., 0.), pt(1., -0.5)], vec![]).unwrap();
        assert_eq!(
            check_half_empty(&open, 0, 1, &rect, HALF_EMPTY_GRID).status,
            Status::HypothesisNotMet
        );

        // a wall below pq with both ends outside the rectangle hides (1, -0.5)
        let walled = Instance::new(
            vec![
                pt(0., 0.),
                pt(2., 0.),
                pt(1., -0.5),
                pt(-0.5, -0.3),
                pt(2.5, -0.3),
            ],
            vec![[3, 4]],
        )
        .unwrap();
        let v = check_half_empty(&walled, 0, 1, &rect, HALF_EMPTY_GRID);
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn homothet_intersection_examples() {
        let sq = Arc::new(ConvexShape::square());
        let h1 = Homothet::new(sq.clone(), pt(0., 0.), 1.0).unwrap();
        let h2 = Homothet::new(sq.clone(), pt(0.5, 0.5), 1.0).unwrap();
        assert!(check_homothet_intersection(&h1, &h2).passed());
        // nested squares sharing a corner touch along two sides
        let h3 = Homothet::new(sq.clone(), pt(0.5, 0.5), 2.0).unwrap();
        assert!(check_homothet_intersection(&h1, &h3).passed());
        assert_eq!(
            check_homothet_intersection(&h1, &h1).status,
            Status::HypothesisNotMet
        );
    }
}
