//! Growing a homothet from `p` towards `q` with `p` pinned on its boundary.
//!
//! With the center at `p + τ d` the homothet is `p + τ K` for the fixed
//! polygon `K = d + (C - O)/ρ`, where `ρ` is the distance from `O` to `∂C`
//! in direction `-d`. `K` contains the origin on its boundary, so the family
//! is nested and a point `x` is first touched at the gauge of `x - p` with
//! respect to `K`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{ConvexShape, Homothet, Point};
use crate::visibility::{region_of, visibility_cone, visible, Instance};

struct Growth<'a> {
    shape: &'a ConvexShape,
    p: Point,
    dir: Point,
    rho: f64,
    offsets: Vec<f64>,
}

impl Growth<'_> {
    fn gauge(&self, x: Point) -> f64 {
        let w = x - self.p;
        let eps = 1e-12 * self.shape.radius() / self.rho;
        let mut tau: f64 = 0.0;
        for (k, &h) in self.offsets.iter().enumerate() {
            let a = self.shape.normal(k).dot(w);
            if h > eps {
                tau = tau.max(a / h);
            } else if a > 1e-12 * w.norm() {
                return f64::INFINITY;
            }
        }
        tau
    }

    fn homothet(&self, shape: &Arc<ConvexShape>, tau: f64) -> Result<Homothet> {
        Homothet::new(shape.clone(), self.p + self.dir * tau, tau / self.rho)
    }
}

/// The first vertex visible to `p` inside the region of `q` that the growing
/// homothet touches before reaching `q`, with the homothet at contact.
pub fn grow_first_hit(
    inst: &Instance,
    shape: &Arc<ConvexShape>,
    p: usize,
    q: usize,
    current_edges: &[(usize, usize)],
) -> Result<Option<(usize, Homothet)>> {
    if p == q {
        return Err(Error::InvalidArgument(
            "growth needs two distinct vertices".into(),
        ));
    }
    let (pp, pq) = (inst.point(p), inst.point(q));
    let dir = (pq - pp).normalized();
    let (_, _, rho, _) = shape
        .clip_line_rel(Point::new(0.0, 0.0), -dir)
        .ok_or(Error::DegenerateDirection)?;
    let offsets = (0..shape.len())
        .map(|k| shape.normal(k).dot(dir) + shape.offset(k) / rho)
        .collect();
    let growth = Growth {
        shape,
        p: pp,
        dir,
        rho,
        offsets,
    };

    let tau_q = growth.gauge(pq);
    let reference = growth.homothet(shape, tau_q)?;
    let at_p: Vec<usize> = current_edges
        .iter()
        .filter_map(|&(a, b)| {
            if a == p {
                Some(b)
            } else if b == p {
                Some(a)
            } else {
                None
            }
        })
        .collect();
    let cone = visibility_cone(inst, &at_p, p, q, &reference);
    let region = region_of(&cone, &reference)?;

    let mut best: Option<(f64, usize)> = None;
    for v in 0..inst.len() {
        if v == p || v == q {
            continue;
        }
        let tau = growth.gauge(inst.point(v));
        if !(tau < tau_q) || best.is_some_and(|(t, _)| t <= tau) {
            continue;
        }
        if visible(inst, p, v) && region.contains(inst.point(v)) {
            best = Some((tau, v));
        }
    }
    best.map(|(tau, v)| Ok((v, growth.homothet(shape, tau)?)))
        .transpose()
}
