//! Geometric kernel: points, orientation and intersection predicates, convex
//! polygons and their homothets.
//!
//! Sign decisions (`orient`, proper crossings, point-in-homothet) go through
//! adaptive exact arithmetic. Distance-style questions (is this point on the
//! boundary?) use an absolute tolerance scaled by the size of the homothet.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for point-on-boundary tests on unit-scale inputs.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Checked constructor; rejects NaN and infinities.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(Error::NonFiniteCoordinate { x, y })
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

/// Sign of the signed area of triangle `abc`, exact for all finite doubles.
pub fn orient(a: Point, b: Point, c: Point) -> Orientation {
    let det = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    if det > 0.0 {
        Orientation::CounterClockwise
    } else if det < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument("segment endpoints coincide".into()));
        }
        Ok(Segment { a, b })
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }
}

/// True iff the two segments cross at a single point interior to both.
/// Shared endpoints, T-junctions and collinear overlaps are not proper.
pub fn segments_properly_intersect(s1: &Segment, s2: &Segment) -> bool {
    properly_intersect(s1.a, s1.b, s2.a, s2.b)
}

pub(crate) fn properly_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 == Orientation::Collinear || o2 == Orientation::Collinear || o1 == o2 {
        return false;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o3 != Orientation::Collinear && o4 != Orientation::Collinear && o3 != o4
}

/// `p` lies strictly between `a` and `b` on segment `ab`.
pub(crate) fn on_open_segment(a: Point, b: Point, p: Point) -> bool {
    if orient(a, b, p) != Orientation::Collinear || p == a || p == b {
        return false;
    }
    let (lx, hx) = (a.x.min(b.x), a.x.max(b.x));
    let (ly, hy) = (a.y.min(b.y), a.y.max(b.y));
    p.x >= lx && p.x <= hx && p.y >= ly && p.y <= hy
}

/// Euclidean distance from `p` to the closed segment `ab`.
pub(crate) fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Twice the signed area (shoelace).
pub fn signed_area(poly: &[Point]) -> f64 {
    let n = poly.len();
    let mut s = 0.0;
    for i in 0..n {
        s += poly[i].cross(poly[(i + 1) % n]);
    }
    0.5 * s
}

/// A strictly convex polygon in counterclockwise order together with an
/// interior reference point. All homothets are taken relative to `origin`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexShape {
    vertices: Vec<Point>,
    origin: Point,
    rel: Vec<Point>,
    normals: Vec<Point>,
    offsets: Vec<f64>,
    cum: Vec<f64>,
    perimeter: f64,
    radius: f64,
}

impl ConvexShape {
    pub fn new(vertices: Vec<Point>, origin: Point) -> Result<Self> {
        let k = vertices.len();
        if k < 3 {
            return Err(Error::InvalidShape(format!(
                "need at least 3 vertices, got {k}"
            )));
        }
        if !origin.is_finite() || vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidShape("non-finite coordinate".into()));
        }
        for i in 0..k {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % k], vertices[(i + 2) % k]);
            if orient(a, b, c) != Orientation::CounterClockwise {
                return Err(Error::InvalidShape(format!(
                    "vertices {i}, {}, {} are not a strict counterclockwise turn",
                    (i + 1) % k,
                    (i + 2) % k
                )));
            }
        }
        // strict convexity of consecutive triples is not enough for a
        // polygon that winds more than once
        let turning: f64 = (0..k)
            .map(|i| {
                let e0 = vertices[(i + 1) % k] - vertices[i];
                let e1 = vertices[(i + 2) % k] - vertices[(i + 1) % k];
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .sum();
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::InvalidShape("polygon is not simple".into()));
        }
        for i in 0..k {
            if orient(vertices[i], vertices[(i + 1) % k], origin) != Orientation::CounterClockwise {
                return Err(Error::InvalidShape(
                    "origin is not strictly inside the polygon".into(),
                ));
            }
        }

        let rel: Vec<Point> = vertices.iter().map(|&v| v - origin).collect();
        let mut normals = Vec::with_capacity(k);
        let mut offsets = Vec::with_capacity(k);
        let mut cum = Vec::with_capacity(k + 1);
        cum.push(0.0);
        for i in 0..k {
            let e = rel[(i + 1) % k] - rel[i];
            let len = e.norm();
            let n = Point::new(e.y / len, -e.x / len);
            normals.push(n);
            offsets.push(n.dot(rel[i]));
            cum.push(cum[i] + len);
        }
        let perimeter = cum[k];
        let radius = rel.iter().map(|v| v.norm()).fold(0.0, f64::max);
        Ok(ConvexShape {
            vertices,
            origin,
            rel,
            normals,
            offsets,
            cum,
            perimeter,
            radius,
        })
    }

    /// Same polygon, different reference point.
    pub fn with_origin(&self, origin: Point) -> Result<Self> {
        ConvexShape::new(self.vertices.clone(), origin)
    }

    /// Axis-aligned unit square centred on the origin.
    pub fn square() -> Self {
        Self::rectangle(1.0, 1.0).expect("unit square is valid")
    }

    /// Axis-aligned rectangle of width `l` and height `s`, centred on the origin.
    pub fn rectangle(l: f64, s: f64) -> Result<Self> {
        if !(l > 0.0 && s > 0.0) || !l.is_finite() || !s.is_finite() {
            return Err(Error::InvalidShape(format!(
                "rectangle sides must be positive, got {l} x {s}"
            )));
        }
        let (hl, hs) = (0.5 * l, 0.5 * s);
        ConvexShape::new(
            vec![
                Point::new(-hl, -hs),
                Point::new(hl, -hs),
                Point::new(hl, hs),
                Point::new(-hl, hs),
            ],
            Point::new(0.0, 0.0),
        )
    }

    /// Unit-side equilateral triangle with a horizontal base, centred on its centroid.
    pub fn equilateral_triangle() -> Self {
        let h = 3f64.sqrt() / 2.0;
        ConvexShape::new(
            vec![
                Point::new(-0.5, -h / 3.0),
                Point::new(0.5, -h / 3.0),
                Point::new(0.0, 2.0 * h / 3.0),
            ],
            Point::new(0.0, 0.0),
        )
        .expect("equilateral triangle is valid")
    }

    /// Regular `k`-gon with circumradius 1, centred on the origin.
    pub fn regular_ngon(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidShape(format!(
                "regular polygon needs k >= 3, got {k}"
            )));
        }
        let vs = (0..k)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / k as f64;
                Point::new(a.cos(), a.sin())
            })
            .collect();
        ConvexShape::new(vs, Point::new(0.0, 0.0))
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex `i` relative to the origin.
    pub fn rel(&self, i: usize) -> Point {
        self.rel[i % self.rel.len()]
    }

    pub(crate) fn rel_vertices(&self) -> &[Point] {
        &self.rel
    }

    /// Outward unit normal of edge `i` (from vertex `i` to `i + 1`).
    pub fn normal(&self, i: usize) -> Point {
        self.normals[i]
    }

    /// Support offset of edge `i` relative to the origin; always positive.
    pub fn offset(&self, i: usize) -> f64 {
        self.offsets[i]
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        self.cum[i + 1] - self.cum[i]
    }

    /// Arc-length position of the start of edge `i`.
    pub fn edge_start(&self, i: usize) -> f64 {
        self.cum[i]
    }

    /// Largest distance from the origin to a vertex.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let mut a = 0.0;
        let mut c = Point::new(0.0, 0.0);
        for i in 0..n {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let w = p.cross(q);
            a += w;
            c = c + (p + q) * w;
        }
        c * (1.0 / (3.0 * a))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Point on the boundary at arc-length `s` (relative to the origin),
    /// measured counterclockwise from vertex 0. Wraps modulo the perimeter.
    pub fn boundary_point_rel(&self, s: f64) -> Point {
        let s = s.rem_euclid(self.perimeter);
        let k = self.rel.len();
        let i = match self.cum.binary_search_by(|c| c.partial_cmp(&s).unwrap()) {
            Ok(i) => i.min(k - 1),
            Err(i) => i - 1,
        };
        let len = self.edge_length(i);
        let t = if len > 0.0 {
            (s - self.cum[i]) / len
        } else {
            0.0
        };
        self.rel[i].lerp(self.rel[(i + 1) % k], t)
    }

    /// Arc-length position of a point lying on edge `i` (relative coordinates).
    pub(crate) fn arc_position_on_edge_rel(&self, i: usize, z: Point) -> f64 {
        self.cum[i] + (z - self.rel[i]).norm().min(self.edge_length(i))
    }

    /// Clip the line `base + t * dir` (relative coordinates) against the
    /// polygon. Returns `(t_lo, edge_lo, t_hi, edge_hi)` where the edge indices
    /// are the boundary edges where the line enters and leaves.
    pub(crate) fn clip_line_rel(
        &self,
        base: Point,
        dir: Point,
    ) -> Option<(f64, usize, f64, usize)> {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let (mut klo, mut khi) = (usize::MAX, usize::MAX);
        for (k, (&n, &h)) in self.normals.iter().zip(&self.offsets).enumerate() {
            let a = n.dot(dir);
            let b = h - n.dot(base);
            if a == 0.0 {
                if b < 0.0 {
                    return None;
                }
                continue;
            }
            let t = b / a;
            if a > 0.0 {
                if t < hi {
                    hi = t;
                    khi = k;
                }
            } else if t > lo {
                lo = t;
                klo = k;
            }
        }
        if lo > hi || klo == usize::MAX || khi == usize::MAX {
            return None;
        }
        Some((lo, klo, hi, khi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContainMode {
    Interior,
    Closed,
}

/// Which of the two boundary arcs between two points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcSide {
    /// Walk counterclockwise from the first point to the second.
    CounterClockwise,
    /// Walk clockwise from the first point to the second.
    Clockwise,
}

/// `center + scale * (C - origin)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Homothet {
    pub shape: Arc<ConvexShape>,
    pub center: Point,
    pub scale: f64,
}

impl Homothet {
    pub fn new(shape: Arc<ConvexShape>, center: Point, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "homothet scale must be positive, got {scale}"
            )));
        }
        if !center.is_finite() {
            return Err(Error::NonFiniteCoordinate {
                x: center.x,
                y: center.y,
            });
        }
        Ok(Homothet {
            shape,
            center,
            scale,
        })
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.center + self.shape.rel(i) * self.scale
    }

    pub fn vertices(&self) -> Vec<Point> {
        (0..self.shape.len()).map(|i| self.vertex(i)).collect()
    }

    pub fn perimeter(&self) -> f64 {
        self.shape.perimeter() * self.scale
    }

    pub fn area(&self) -> f64 {
        self.shape.area() * self.scale * self.scale
    }

    /// Tolerance for boundary incidence, scaled to the homothet's extent.
    pub fn tolerance(&self) -> f64 {
        let extent =
            self.center.x.abs().max(self.center.y.abs()) + self.scale * self.shape.radius();
        BOUNDARY_TOL * extent.max(1.0)
    }

    /// Signed distance to the boundary, positive inside. Exact for points
    /// outside only up to the nearest supporting line.
    pub fn depth(&self, p: Point) -> f64 {
        let d = p - self.center;
        (0..self.shape.len())
            .map(|k| self.scale * self.shape.offset(k) - self.shape.normal(k).dot(d))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, p: Point, mode: ContainMode) -> bool {
        let k = self.shape.len();
        let vs = self.vertices();
        for i in 0..k {
            match (orient(vs[i], vs[(i + 1) % k], p), mode) {
                (Orientation::Clockwise, _) => return false,
                (Orientation::Collinear, ContainMode::Interior) => return false,
                _ => {}
            }
        }
        true
    }

    /// Distance from `p` to the boundary polyline.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let k = self.shape.len();
        (0..k)
            .map(|i| point_segment_distance(p, self.vertex(i), self.vertex(i + 1)))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn on_boundary(&self, p: Point) -> bool {
        self.boundary_distance(p) <= self.tolerance()
    }

    /// Arc-length position of a boundary point, counterclockwise from vertex 0.
    pub fn boundary_position(&self, p: Point) -> Result<f64> {
        let k = self.shape.len();
        let (mut best, mut bi) = (f64::INFINITY, 0);
        for i in 0..k {
            let d = point_segment_distance(p, self.vertex(i), self.vertex(i + 1));
            if d < best {
                best = d;
                bi = i;
            }
        }
        if best > self.tolerance() {
            return Err(Error::PointNotOnBoundary {
                x: p.x,
                y: p.y,
                distance: best,
            });
        }
        let len = self.shape.edge_length(bi) * self.scale;
        let along = (p - self.vertex(bi)).norm().min(len);
        Ok(self.shape.edge_start(bi) * self.scale + along)
    }

    /// Intersection of the homothet with the segment `ab`, as a parameter
    /// range on `a + t (b - a)`, `t` in `[0, 1]`.
    pub fn clip_segment(&self, a: Point, b: Point) -> Option<(f64, f64)> {
        let base = (a - self.center) * (1.0 / self.scale);
        let dir = (b - a) * (1.0 / self.scale);
        let (lo, _, hi, _) = self.shape.clip_line_rel(base, dir)?;
        let (lo, hi) = (lo.max(0.0), hi.min(1.0));
        (lo <= hi).then_some((lo, hi))
    }
}

/// Length of one of the two boundary arcs of `h` between boundary points `a`
/// and `b`.
pub fn boundary_arc_length(h: &Homothet, a: Point, b: Point, side: ArcSide) -> Result<f64> {
    let sa = h.boundary_position(a)?;
    let sb = h.boundary_position(b)?;
    let per = h.perimeter();
    let ccw = (sb - sa).rem_euclid(per);
    let ccw = if ccw >= per { 0.0 } else { ccw };
    Ok(match side {
        ArcSide::CounterClockwise => ccw,
        ArcSide::Clockwise => per - ccw,
    })
}

/// One connected piece of `∂h1 ∩ ∂h2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntersectionComponent {
    Point {
        at: Point,
    },
    Segment {
        a: Point,
        b: Point,
    },
    /// Several straight pieces joined at corners.
    Polyline {
        pieces: Vec<(Point, Point)>,
    },
}

impl IntersectionComponent {
    /// Number of maximal straight pieces (a point counts as one).
    pub fn straight_pieces(&self) -> usize {
        match self {
            IntersectionComponent::Polyline { pieces } => pieces.len(),
            _ => 1,
        }
    }
}

/// Connected components of the intersection of the two boundaries.
pub fn homothet_pair_intersection_components(
    h1: &Homothet,
    h2: &Homothet,
) -> Vec<IntersectionComponent> {
    let v1 = h1.vertices();
    let v2 = h2.vertices();
    let (k1, k2) = (v1.len(), v2.len());
    let tol = h1.tolerance().max(h2.tolerance());

    let mut pieces: Vec<(Point, Point)> = Vec::new();
    for i in 0..k1 {
        let (a, b) = (v1[i], v1[(i + 1) % k1]);
        for j in 0..k2 {
            let (c, d) = (v2[j], v2[(j + 1) % k2]);
            if let Some(piece) = segment_intersection(a, b, c, d) {
                pieces.push(piece);
            }
        }
    }

    // union pieces that touch
    let n = pieces.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if pieces_touch(pieces[i], pieces[j], tol) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: Vec<Vec<(Point, Point)>> = Vec::new();
    let mut root_to_group = std::collections::HashMap::new();
    for (i, &piece) in pieces.iter().enumerate() {
        let r = find(&mut parent, i);
        let g = *root_to_group.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(piece);
    }

    groups
        .into_iter()
        .map(|g| classify_component(g, tol))
        .collect()
}

fn segment_intersection(a: Point, b: Point, c: Point, d: Point) -> Option<(Point, Point)> {
    use Orientation::Collinear;
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 == Collinear && o2 == Collinear {
        let ab = b - a;
        let len2 = ab.dot(ab);
        let tc = (c - a).dot(ab) / len2;
        let td = (d - a).dot(ab) / len2;
        let lo = tc.min(td).max(0.0);
        let hi = tc.max(td).min(1.0);
        if lo > hi {
            return None;
        }
        return Some((a + ab * lo, a + ab * hi));
    }
    if o1 == o2 {
        return None;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o3 == o4 && o3 != Collinear {
        return None;
    }
    let p = if o1 == Collinear {
        c
    } else if o2 == Collinear {
        d
    } else if o3 == Collinear {
        a
    } else if o4 == Collinear {
        b
    } else {
        let r = b - a;
        let s = d - c;
        let t = (c - a).cross(s) / r.cross(s);
        a + r * t
    };
    Some((p, p))
}

fn pieces_touch(p: (Point, Point), q: (Point, Point), tol: f64) -> bool {
    point_segment_distance(p.0, q.0, q.1) <= tol
        || point_segment_distance(p.1, q.0, q.1) <= tol
        || point_segment_distance(q.0, p.0, p.1) <= tol
        || point_segment_distance(q.1, p.0, p.1) <= tol
}

fn classify_component(group: Vec<(Point, Point)>, tol: f64) -> IntersectionComponent {
    let mut segs: Vec<(Point, Point)> = group
        .iter()
        .copied()
        .filter(|(a, b)| a.dist(*b) > tol)
        .collect();
    if segs.is_empty() {
        return IntersectionComponent::Point { at: group[0].0 };
    }
    // merge collinear overlapping segments
    let mut merged = true;
    while merged {
        merged = false;
        'outer: for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (a, b) = segs[i];
                let (c, d) = segs[j];
                let dir = (b - a).normalized();
                let off_c = (c - a).cross(dir).abs();
                let off_d = (d - a).cross(dir).abs();
                if off_c <= tol && off_d <= tol && pieces_touch(segs[i], segs[j], tol) {
                    let ts = [0.0, (b - a).dot(dir), (c - a).dot(dir), (d - a).dot(dir)];
                    let lo = ts.iter().copied().fold(f64::INFINITY, f64::min);
                    let hi = ts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    segs[i] = (a + dir * lo, a + dir * hi);
                    segs.swap_remove(j);
                    merged = true;
                    break 'outer;
                }
            }
        }
    }
    if segs.len() == 1 {
        IntersectionComponent::Segment {
            a: segs[0].0,
            b: segs[0].1,
        }
    } else {
        IntersectionComponent::Polyline { pieces: segs }
    }
}
