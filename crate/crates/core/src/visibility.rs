//! Point sets with non-crossing segment constraints, their visibility graph,
//! and the constructions used to argue about visible vertices inside a
//! homothet: convex chains, visibility cones and regions.

use std::collections::HashSet;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{on_open_segment, orient, properly_intersect, Homothet, Orientation, Point};

/// A point set `P` with constraint segments `S` given as vertex-index pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    points: Vec<Point>,
    constraints: Vec<[usize; 2]>,
    #[serde(skip)]
    constraint_set: HashSet<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawInstance {
    points: Vec<[f64; 2]>,
    #[serde(default)]
    constraints: Vec<[usize; 2]>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Instance {
    pub fn new(points: Vec<Point>, constraints: Vec<[usize; 2]>) -> Result<Self> {
        for p in &points {
            Point::try_new(p.x, p.y)?;
        }
        let n = points.len();
        let mut sorted: Vec<(f64, f64, usize)> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.x, p.y, i))
            .collect();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::InvalidInstance(format!(
                    "points {} and {} coincide",
                    w[0].2, w[1].2
                )));
            }
        }
        let mut constraint_set = HashSet::with_capacity(constraints.len());
        for (ci, &[a, b]) in constraints.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidInstance(format!(
                    "constraint {ci} references a missing vertex"
                )));
            }
            if a == b {
                return Err(Error::InvalidInstance(format!(
                    "constraint {ci} is a loop at vertex {a}"
                )));
            }
            if !constraint_set.insert(key(a, b)) {
                return Err(Error::InvalidInstance(format!(
                    "constraint {ci} ({a}, {b}) is duplicated"
                )));
            }
        }
        for i in 0..constraints.len() {
            for j in i + 1..constraints.len() {
                let [a, b] = constraints[i];
                let [c, d] = constraints[j];
                if properly_intersect(points[a], points[b], points[c], points[d]) {
                    return Err(Error::InvalidInstance(format!(
                        "constraints {i} and {j} cross"
                    )));
                }
            }
        }
        Ok(Instance {
            points,
            constraints,
            constraint_set,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(s)?;
        Instance::new(
            raw.points.into_iter().map(Point::from).collect(),
            raw.constraints,
        )
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn constraints(&self) -> &[[usize; 2]] {
        &self.constraints
    }

    pub fn is_constraint(&self, u: usize, v: usize) -> bool {
        self.constraint_set.contains(&key(u, v))
    }

    /// Other endpoints of constraints incident to `v`.
    pub fn constraint_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.constraints.iter().filter_map(move |&[a, b]| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Whether an arbitrary point-to-point segment is blocked by a constraint.
    pub fn segment_blocked(&self, a: Point, b: Point) -> bool {
        self.constraints
            .iter()
            .any(|&[c, d]| properly_intersect(a, b, self.points[c], self.points[d]))
    }
}

/// `uv` is a constraint, or crosses no constraint properly.
pub fn visible(inst: &Instance, u: usize, v: usize) -> bool {
    if u == v {
        return false;
    }
    inst.is_constraint(u, v) || !inst.segment_blocked(inst.point(u), inst.point(v))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityGraph {
    pub n: usize,
    /// Sorted neighbour lists.
    pub adjacency: Vec<Vec<usize>>,
    /// Euclidean length of each adjacency entry.
    pub weights: Vec<Vec<f64>>,
    matrix: Vec<bool>,
}

impl VisibilityGraph {
    pub fn is_visible(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

pub fn build_visibility_graph(inst: &Instance) -> VisibilityGraph {
    let n = inst.len();
    let rows: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|u| (0..n).map(|v| v > u && visible(inst, u, v)).collect())
        .collect();
    let mut matrix = vec![false; n * n];
    for u in 0..n {
        for v in u + 1..n {
            if rows[u][v] {
                matrix[u * n + v] = true;
                matrix[v * n + u] = true;
            }
        }
    }
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| matrix[u * n + v]).collect())
        .collect();
    let weights = adjacency
        .iter()
        .enumerate()
        .map(|(u, ns)| {
            ns.iter()
                .map(|&v| inst.point(u).dist(inst.point(v)))
                .collect()
        })
        .collect();
    VisibilityGraph {
        n,
        adjacency,
        weights,
        matrix,
    }
}

fn in_closed_triangle(a: Point, b: Point, c: Point, x: Point) -> bool {
    let o = orient(a, b, c);
    [orient(a, b, x), orient(b, c, x), orient(c, a, x)]
        .iter()
        .all(|&s| s == o || s == Orientation::Collinear)
}

pub(crate) fn in_open_triangle(a: Point, b: Point, c: Point, x: Point) -> bool {
    let o = orient(a, b, c);
    o != Orientation::Collinear
        && orient(a, b, x) == o
        && orient(b, c, x) == o
        && orient(c, a, x) == o
}

/// Counterclockwise convex hull, collinear points dropped.
fn convex_hull(inst: &Instance, mut ids: Vec<usize>) -> Vec<usize> {
    ids.sort_by(|&i, &j| {
        let (a, b) = (inst.point(i), inst.point(j));
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    ids.dedup();
    if ids.len() < 3 {
        return ids;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &ids {
        while lower.len() >= 2
            && orient(
                inst.point(lower[lower.len() - 2]),
                inst.point(lower[lower.len() - 1]),
                inst.point(i),
            ) != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in ids.iter().rev() {
        while upper.len() >= 2
            && orient(
                inst.point(upper[upper.len() - 2]),
                inst.point(upper[upper.len() - 1]),
                inst.point(i),
            ) != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// The convex chain of visibility edges from `u` to `v` inside triangle
/// `uvw` whose region towards `w` is empty and free of constraints.
///
/// Computed as the side of the convex hull of `{u, v}` and the vertices in
/// the triangle that faces `w`.
pub fn convex_chain(inst: &Instance, u: usize, v: usize, w: usize) -> Result<Vec<usize>> {
    let n = inst.len();
    if u >= n || v >= n || w >= n || u == v || v == w || u == w {
        return Err(Error::PreconditionViolated(
            "u, v, w must be distinct vertices".into(),
        ));
    }
    let (pu, pv, pw) = (inst.point(u), inst.point(v), inst.point(w));
    let side = orient(pu, pv, pw);
    if side == Orientation::Collinear {
        return Err(Error::PreconditionViolated("u, v, w are collinear".into()));
    }
    if !visible(inst, u, w) || !visible(inst, v, w) {
        return Err(Error::PreconditionViolated(
            "uw and vw must be visibility edges".into(),
        ));
    }
    for x in inst.constraint_neighbors(w) {
        let px = inst.point(x);
        if orient(pw, pu, px) == orient(pw, pu, pv) && orient(pw, px, pv) == orient(pw, pu, pv) {
            return Err(Error::PreconditionViolated(format!(
                "constraint ({w}, {x}) enters the interior of the triangle"
            )));
        }
    }

    let mut ids: Vec<usize> = (0..n)
        .filter(|&x| x != u && x != v && x != w && in_closed_triangle(pu, pv, pw, inst.point(x)))
        .collect();
    let inside = ids.clone();
    ids.push(u);
    ids.push(v);
    let hull = convex_hull(inst, ids);

    let start = if side == Orientation::CounterClockwise {
        u
    } else {
        v
    };
    let s = hull
        .iter()
        .position(|&x| x == start)
        .ok_or_else(|| Error::PreconditionViolated("triangle corner missing from hull".into()))?;
    let rotated: Vec<usize> = hull[s..].iter().chain(&hull[..s]).copied().collect();
    let chain: Vec<usize> = if side == Orientation::CounterClockwise {
        // hull runs u, v, a1..am; the w-side walk is u, am..a1, v
        if rotated.get(1) != Some(&v) {
            return Err(Error::PreconditionViolated("uv is not a hull edge".into()));
        }
        std::iter::once(u)
            .chain(rotated[2..].iter().rev().copied())
            .chain(std::iter::once(v))
            .collect()
    } else {
        if rotated.get(1) != Some(&u) {
            return Err(Error::PreconditionViolated("uv is not a hull edge".into()));
        }
        rotated[1..]
            .iter()
            .copied()
            .chain(std::iter::once(v))
            .collect()
    };

    for win in chain.windows(2) {
        let (a, b) = (inst.point(win[0]), inst.point(win[1]));
        if let Some(&x) = inside
            .iter()
            .find(|&&x| on_open_segment(a, b, inst.point(x)))
        {
            return Err(Error::GeneralPositionViolation {
                p: u,
                q: v,
                detail: format!("vertex {x} lies on chain edge ({}, {})", win[0], win[1]),
            });
        }
        if !visible(inst, win[0], win[1]) {
            return Err(Error::PreconditionViolated(format!(
                "chain edge ({}, {}) is not a visibility edge",
                win[0], win[1]
            )));
        }
    }
    Ok(chain)
}

/// The cone at `apex` between the clockwise and counterclockwise neighbouring
/// half-lines of `apex -> target`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VisibilityCone {
    pub apex: usize,
    pub target: usize,
    /// Direction of the clockwise bounding half-line; `None` for the full plane.
    pub cw_bound: Option<Point>,
    /// Direction of the counterclockwise bounding half-line; `None` for the full plane.
    pub ccw_bound: Option<Point>,
    /// Two candidate half-lines shared a direction.
    pub tie: bool,
    #[serde(skip)]
    apex_point: Point,
    #[serde(skip)]
    axis: Point,
}

/// Counterclockwise angle from `from` to `to` in `[0, 2π)`.
fn ccw_angle(from: Point, to: Point) -> f64 {
    let a = from.cross(to).atan2(from.dot(to));
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

impl VisibilityCone {
    pub fn is_full(&self) -> bool {
        self.cw_bound.is_none()
    }

    /// Whether `x` lies in the closed cone.
    pub fn contains(&self, x: Point) -> bool {
        let (Some(cw), Some(ccw)) = (self.cw_bound, self.ccw_bound) else {
            return true;
        };
        let d = x - self.apex_point;
        if d.x == 0.0 && d.y == 0.0 {
            return true;
        }
        let phi = ccw_angle(self.axis, d);
        let a_ccw = ccw_angle(self.axis, ccw);
        let a_cw = TAU - ccw_angle(self.axis, cw);
        phi <= a_ccw || phi >= TAU - a_cw
    }
}

/// Where the ray from `from` (on or inside `h`) in direction `dir` leaves `h`.
fn ray_exit(h: &Homothet, from: Point, dir: Point) -> Option<Point> {
    let base = (from - h.center) * (1.0 / h.scale);
    let d = dir * (1.0 / h.scale);
    let (lo, _, hi, _) = h.shape.clip_line_rel(base, d)?;
    let eps = 1e-12 * (1.0 + base.norm()) / d.norm();
    (hi > lo.max(0.0) + eps).then(|| from + dir * hi)
}

pub fn visibility_cone(
    inst: &Instance,
    cgdg_edges_at_p: &[usize],
    p: usize,
    q: usize,
    ref_homothet: &Homothet,
) -> VisibilityCone {
    let pp = inst.point(p);
    let axis = inst.point(q) - pp;
    let mut cands: Vec<usize> = inst
        .constraint_neighbors(p)
        .chain(cgdg_edges_at_p.iter().copied())
        .collect();
    cands.sort_unstable();
    cands.dedup();

    // (angle, length, direction)
    let mut best_cw: Option<(f64, f64, Point)> = None;
    let mut best_ccw: Option<(f64, f64, Point)> = None;
    let mut tie = false;
    for r in cands {
        if r == p {
            continue;
        }
        let pr = inst.point(r);
        let d = pr - pp;
        if orient(pp, inst.point(q), pr) == Orientation::Collinear && d.dot(axis) > 0.0 {
            continue;
        }
        if ray_exit(ref_homothet, pp, d).is_none() {
            continue;
        }
        let a_ccw = ccw_angle(axis, d);
        let a_cw = TAU - a_ccw;
        let len = d.norm();
        for (slot, ang) in [(&mut best_ccw, a_ccw), (&mut best_cw, a_cw)] {
            match slot {
                Some((a, l, _)) if ang == *a => {
                    tie = true;
                    if len < *l {
                        *slot = Some((ang, len, d));
                    }
                }
                Some((a, _, _)) if ang > *a => {}
                _ => *slot = Some((ang, len, d)),
            }
        }
    }
    VisibilityCone {
        apex: p,
        target: q,
        cw_bound: best_cw.map(|b| b.2),
        ccw_bound: best_ccw.map(|b| b.2),
        tie,
        apex_point: pp,
        axis,
    }
}

/// A simple polygon (counterclockwise); convex unless the cone is reflex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Region {
    pub polygon: Vec<Point>,
}

impl Region {
    pub fn area(&self) -> f64 {
        crate::geom::signed_area(&self.polygon)
    }

    /// Closed point-in-polygon test.
    pub fn contains(&self, x: Point) -> bool {
        let n = self.polygon.len();
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (self.polygon[i], self.polygon[(i + 1) % n]);
            if x == a || on_open_segment(a, b, x) {
                return true;
            }
            if (a.y > x.y) != (b.y > x.y) {
                let o = orient(a, b, x);
                let upward = b.y > a.y;
                if (upward && o == Orientation::CounterClockwise)
                    || (!upward && o == Orientation::Clockwise)
                {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

/// `cone ∩ h` for a homothet with the cone's apex on its boundary.
pub fn region_of(cone: &VisibilityCone, h: &Homothet) -> Result<Region> {
    let (Some(cw), Some(ccw)) = (cone.cw_bound, cone.ccw_bound) else {
        return Ok(Region {
            polygon: h.vertices(),
        });
    };
    let apex = cone.apex_point;
    let b = ray_exit(h, apex, cw).unwrap_or(apex);
    let a = ray_exit(h, apex, ccw).unwrap_or(apex);
    let per = h.perimeter();
    let sb = h.boundary_position(b)?;
    let sa = h.boundary_position(a)?;
    let span = if cw == ccw {
        per
    } else {
        (sa - sb).rem_euclid(per)
    };
    let mut corners: Vec<(f64, Point)> = (0..h.shape.len())
        .filter_map(|i| {
            let s = h.shape.edge_start(i) * h.scale;
            let off = (s - sb).rem_euclid(per);
            (off > 0.0 && off < span).then(|| (off, h.vertex(i)))
        })
        .collect();
    corners.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut polygon = vec![apex, b];
    polygon.extend(corners.into_iter().map(|c| c.1));
    polygon.push(a);
    polygon.dedup();
    if polygon.len() > 1 && polygon.first() == polygon.last() {
        polygon.pop();
    }
    Ok(Region { polygon })
}

/// A vertex inside `h` visible to both `p` and `q` with triangle `pyq` empty,
/// if some vertex of the region of `h` containing `q` is visible to `p`.
pub fn find_mutually_visible_witness(
    inst: &Instance,
    p: usize,
    q: usize,
    h: &Homothet,
) -> Result<Option<usize>> {
    let cone = visibility_cone(inst, &[], p, q, h);
    let region = region_of(&cone, h)?;
    let seed = (0..inst.len())
        .find(|&x| x != p && x != q && region.contains(inst.point(x)) && visible(inst, p, x));
    let Some(x) = seed else {
        return Ok(None);
    };
    if let Ok(chain) = convex_chain(inst, x, q, p) {
        let y = chain[chain.len() - 2];
        if is_mutual_witness(inst, p, q, y, h) {
            return Ok(Some(y));
        }
    }
    // degenerate configurations: fall back to exhaustive search
    (0..inst.len())
        .find(|&y| y != p && y != q && is_mutual_witness(inst, p, q, y, h))
        .map(Some)
        .ok_or_else(|| {
            Error::PreconditionViolated(format!(
                "vertex {x} is visible to {p} inside the region but no mutually visible vertex exists"
            ))
        })
}

pub(crate) fn is_mutual_witness(
    inst: &Instance,
    p: usize,
    q: usize,
    y: usize,
    h: &Homothet,
) -> bool {
    let (pp, pq, py) = (inst.point(p), inst.point(q), inst.point(y));
    h.contains(py, crate::geom::ContainMode::Closed)
        && visible(inst, p, y)
        && visible(inst, q, y)
        && !(0..inst.len())
            .any(|z| z != p && z != q && z != y && in_open_triangle(pp, py, pq, inst.point(z)))
}
