//! Shape constants: the diamond angle `α`, the chord constant `κ` with its
//! optimal center, and the spanning bounds derived from them.
//!
//! Both constants are continuous optimizations over the boundary and have no
//! closed form for general shapes. They are computed numerically by seeded
//! multi-start compass search, and every result carries a certificate that
//! can be re-evaluated independently.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{ConvexShape, Point};

/// Two boundary points and the base angles of the isosceles triangles on
/// `xy` whose apexes lie on either boundary arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoscelesPair {
    pub base_a: Point,
    pub base_b: Point,
    /// Apex on the arc walked counterclockwise from `base_a` to `base_b`.
    pub angle_primary: f64,
    pub angle_secondary: f64,
    pub apex_primary: Point,
    pub apex_secondary: Point,
}

impl IsoscelesPair {
    pub fn value(&self) -> f64 {
        self.angle_primary.max(self.angle_secondary)
    }
}

/// A chord through `center` with the longer boundary arc between its ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordMeasure {
    pub x: Point,
    pub y: Point,
    pub center: Point,
    pub arc_long: f64,
    pub chord: f64,
}

impl ChordMeasure {
    pub fn ratio(&self) -> f64 {
        self.arc_long / self.chord
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeConstants {
    pub alpha: f64,
    pub kappa: f64,
    pub center_o: Point,
    pub bound_t_triangulation: f64,
    pub bound_t_general: f64,
    pub alpha_certificate: IsoscelesPair,
    pub kappa_certificate: ChordMeasure,
}

/// Evaluate both base angles for the boundary points at arc positions `s1`, `s2`.
pub fn isosceles_pair(shape: &ConvexShape, s1: f64, s2: f64) -> Option<IsoscelesPair> {
    let x = shape.boundary_point_rel(s1);
    let y = shape.boundary_point_rel(s2);
    let d = y - x;
    let half = 0.5 * d.norm();
    if half <= 1e-15 * shape.radius() {
        return None;
    }
    let m = x.midpoint(y);
    let n = d.perp() * (0.5 / half);
    let (lo, _, hi, _) = shape.clip_line_rel(m, n)?;
    // the counterclockwise arc from x to y lies to the right of x -> y
    let (h_primary, h_secondary) = ((-lo).max(0.0), hi.max(0.0));
    let o = shape.origin();
    Some(IsoscelesPair {
        base_a: x + o,
        base_b: y + o,
        angle_primary: (h_primary / half).atan(),
        angle_secondary: (h_secondary / half).atan(),
        apex_primary: m + n * lo + o,
        apex_secondary: m + n * hi + o,
    })
}

fn alpha_objective(shape: &ConvexShape, s: [f64; 2]) -> f64 {
    isosceles_pair(shape, s[0], s[1]).map_or(f64::INFINITY, |c| c.value())
}

/// Boundary seeds: uniform arc-length samples, corners and edge midpoints.
fn boundary_seeds(shape: &ConvexShape, resolution: usize) -> Vec<f64> {
    let per = shape.perimeter();
    let mut seeds: Vec<f64> = (0..resolution)
        .map(|i| per * i as f64 / resolution as f64)
        .collect();
    for i in 0..shape.len() {
        seeds.push(shape.edge_start(i));
        seeds.push(shape.edge_start(i) + 0.5 * shape.edge_length(i));
    }
    seeds.sort_by(|a, b| a.partial_cmp(b).unwrap());
    seeds.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * per);
    seeds
}

/// Minimize `f` over `R^2` by compass search with eight directions.
fn compass_search<F: Fn([f64; 2]) -> f64>(
    f: F,
    start: [f64; 2],
    mut step: f64,
    min_step: f64,
) -> ([f64; 2], f64) {
    const DIRS: [[f64; 2]; 8] = [
        [1.0, 0.0],
        [-1.0, 0.0],
        [0.0, 1.0],
        [0.0, -1.0],
        [1.0, 1.0],
        [1.0, -1.0],
        [-1.0, 1.0],
        [-1.0, -1.0],
    ];
    let mut x = start;
    let mut fx = f(x);
    while step > min_step {
        let mut improved = false;
        for d in DIRS {
            let y = [x[0] + step * d[0], x[1] + step * d[1]];
            let fy = f(y);
            if fy < fx {
                x = y;
                fx = fy;
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx)
}

/// `α_C` and a pair attaining it. `resolution` is the number of uniform
/// boundary samples used to seed the search.
pub fn compute_alpha(shape: &ConvexShape, resolution: usize) -> (f64, IsoscelesPair) {
    let resolution = resolution.max(4);
    let per = shape.perimeter();
    let seeds = boundary_seeds(shape, resolution);
    let mut starts: Vec<([f64; 2], f64)> = Vec::new();
    for (i, &a) in seeds.iter().enumerate() {
        for &b in &seeds[i + 1..] {
            let s = [a, b];
            starts.push((s, alpha_objective(shape, s)));
        }
    }
    starts.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    starts.truncate(16);
    let step = per / seeds.len() as f64;
    let best = starts
        .par_iter()
        .map(|&(s, _)| compass_search(|s| alpha_objective(shape, s), s, step, 1e-13 * per))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .expect("at least one start");
    let cert =
        isosceles_pair(shape, best.0[0], best.0[1]).expect("finite optimum has a certificate");
    (cert.value(), cert)
}

/// The worst chord through `o` (absolute coordinates) among sampled
/// directions, refined locally.
pub fn kappa_at(shape: &ConvexShape, o: Point, resolution: usize) -> Option<ChordMeasure> {
    let base = o - shape.origin();
    let eval = |theta: f64| chord_measure(shape, base, theta);
    let samples = 8 * resolution.max(4);
    let mut thetas: Vec<f64> = (0..samples)
        .map(|i| PI * i as f64 / samples as f64)
        .collect();
    for &v in shape.rel_vertices() {
        let d = v - base;
        thetas.push(d.y.atan2(d.x).rem_euclid(PI));
    }
    let mut scored: Vec<(f64, f64)> = thetas
        .into_iter()
        .filter_map(|t| eval(t).map(|c| (t, c.ratio())))
        .collect();
    if scored.is_empty() {
        return None;
    }
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let width = PI / samples as f64;
    let mut best_theta = scored[0].0;
    let mut best = scored[0].1;
    for &(t, r) in scored.iter().take(6) {
        let (tt, rr) = golden_max(|x| eval(x).map_or(0.0, |c| c.ratio()), t - width, t + width);
        let (tt, rr) = if rr > r { (tt, rr) } else { (t, r) };
        if rr > best {
            best = rr;
            best_theta = tt;
        }
    }
    eval(best_theta)
}

fn chord_measure(shape: &ConvexShape, base: Point, theta: f64) -> Option<ChordMeasure> {
    let d = Point::new(theta.cos(), theta.sin());
    let (lo, elo, hi, ehi) = shape.clip_line_rel(base, d)?;
    let chord = hi - lo;
    if chord <= 0.0 {
        return None;
    }
    let x = base + d * lo;
    let y = base + d * hi;
    let per = shape.perimeter();
    let l = (shape.arc_position_on_edge_rel(ehi, y) - shape.arc_position_on_edge_rel(elo, x))
        .rem_euclid(per);
    let o = shape.origin();
    Some(ChordMeasure {
        x: x + o,
        y: y + o,
        center: base + o,
        arc_long: l.max(per - l),
        chord,
    })
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `κ_C`, the center `O` attaining it and the worst chord through `O`.
pub fn compute_kappa(shape: &ConvexShape, resolution: usize) -> (f64, Point, ChordMeasure) {
    let resolution = resolution.max(4);
    let vs = shape.vertices();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for v in vs {
        xmin = xmin.min(v.x);
        xmax = xmax.max(v.x);
        ymin = ymin.min(v.y);
        ymax = ymax.max(v.y);
    }
    let inner = |p: Point| strictly_inside(shape, p);
    let objective = |s: [f64; 2]| {
        let p = Point::new(s[0], s[1]);
        if !inner(p) {
            return f64::INFINITY;
        }
        kappa_at(shape, p, resolution).map_or(f64::INFINITY, |c| c.ratio())
    };
    let g = resolution.min(24);
    let mut seeds: Vec<Point> = vec![shape.centroid(), shape.origin()];
    for i in 1..g {
        for j in 1..g {
            let p = Point::new(
                xmin + (xmax - xmin) * i as f64 / g as f64,
                ymin + (ymax - ymin) * j as f64 / g as f64,
            );
            if inner(p) {
                seeds.push(p);
            }
        }
    }
    let mut scored: Vec<(Point, f64)> = seeds
        .par_iter()
        .map(|&p| (p, objective([p.x, p.y])))
        .collect();
    scored.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    scored.truncate(4);
    let span = (xmax - xmin).max(ymax - ymin);
    let step = span / g as f64;
    let (best, _) = scored
        .par_iter()
        .map(|&(p, _)| compass_search(objective, [p.x, p.y], step, 1e-9 * span))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .expect("at least one seed");
    let o = Point::new(best[0], best[1]);
    let cert = kappa_at(shape, o, resolution).expect("interior center has chords");
    (cert.ratio(), o, cert)
}

fn strictly_inside(shape: &ConvexShape, p: Point) -> bool {
    let z = p - shape.origin();
    (0..shape.len()).all(|k| shape.normal(k).dot(z) < shape.offset(k))
}

/// Spanning ratio bound for the constrained graph: the triangulation case
/// uses one factor of `κ`, the general case two.
pub fn theorem1_bound(alpha: f64, kappa: f64, is_triangulation: bool) -> Result<f64> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in (0, π/2), got {alpha}"
        )));
    }
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "kappa must be at least 1, got {kappa}"
        )));
    }
    let m = (3.0 / (alpha / 2.0).sin()).max(kappa);
    Ok(if is_triangulation {
        2.0 * kappa * m
    } else {
        2.0 * kappa * kappa * m
    })
}

fn check_rect(l: f64, s: f64) -> Result<()> {
    if !(s > 0.0) || !(l >= s) || !l.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "rectangle needs l >= s > 0, got l={l}, s={s}"
        )));
    }
    Ok(())
}

/// Spanning ratio bound for axis-aligned `l × s` rectangles.
pub fn rect_bound(l: f64, s: f64) -> Result<f64> {
    check_rect(l, s)?;
    Ok(std::f64::consts::SQRT_2 * (2.0 * l / s + 1.0))
}

/// Closed-form `α` of an `l × s` rectangle.
pub fn rectangle_alpha(l: f64, s: f64) -> Result<f64> {
    check_rect(l, s)?;
    Ok((s / l).atan())
}

/// Closed-form `κ` of an `l × s` rectangle, attained at its center.
pub fn rectangle_kappa(l: f64, s: f64) -> Result<f64> {
    check_rect(l, s)?;
    Ok(l / s + 1.0)
}

pub fn shape_constants(shape: &ConvexShape, resolution: usize) -> Result<ShapeConstants> {
    let (alpha, alpha_certificate) = compute_alpha(shape, resolution);
    let (kappa, center_o, kappa_certificate) = compute_kappa(shape, resolution);
    Ok(ShapeConstants {
        alpha,
        kappa,
        center_o,
        bound_t_triangulation: theorem1_bound(alpha, kappa, true)?,
        bound_t_general: theorem1_bound(alpha, kappa, false)?,
        alpha_certificate,
        kappa_certificate,
    })
}
