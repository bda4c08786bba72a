//! The one-parameter family of homothets having two given points on their
//! boundary.
//!
//! A homothet `x + λC` has `p` and `q` on its boundary exactly when
//! `u = (p - x)/λ` and `w = (q - x)/λ` both lie on `∂C`, so `w - u` is a chord
//! of `C` parallel to `q - p`. The family is therefore indexed by the signed
//! offset `t` of that chord along the normal of `pq`. Between consecutive
//! vertex offsets of `C` both chord endpoints slide along fixed edges, and
//! every point-in-homothet condition becomes linear in `t`.
//!
//! When `C` has an edge parallel to `pq`, the extreme chord is that whole
//! edge and the corresponding end of the parameter range is closed. Any
//! homothet with `p` and `q` on that flat side contains the extreme one, so
//! nothing else on that side needs to be searched.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{ConvexShape, Homothet, Point};

/// Affine function `a + b t` in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinePoint {
    pub a: Point,
    pub b: Point,
}

impl AffinePoint {
    pub fn at(&self, t: f64) -> Point {
        self.a + self.b * t
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PencilRegime {
    /// Closed parameter range over which the feature pair is fixed.
    pub t_lo: f64,
    pub t_hi: f64,
    /// Shape edge carrying the preimage of `p`.
    pub entry_edge: usize,
    /// Shape edge carrying the preimage of `q`.
    pub exit_edge: usize,
    /// Preimage of `p` on `∂C`, relative to the shape origin.
    pub entry: AffinePoint,
    /// Preimage of `q` on `∂C`, relative to the shape origin.
    pub exit: AffinePoint,
}

impl PencilRegime {
    /// Chord length `|w(t) - u(t)|` along the pair direction; affine in `t`.
    pub fn chord_coeffs(&self, dir: Point) -> (f64, f64) {
        (
            dir.dot(self.exit.a - self.entry.a),
            dir.dot(self.exit.b - self.entry.b),
        )
    }
}

#[derive(Debug, Clone)]
pub struct Pencil {
    pub shape: Arc<ConvexShape>,
    pub p: Point,
    pub q: Point,
    /// Unit direction from `p` to `q`.
    pub dir: Point,
    /// Counterclockwise unit normal of `dir`.
    pub normal: Point,
    pub dist: f64,
    pub regimes: Vec<PencilRegime>,
    /// Whether the lowest / highest parameter belongs to the family (the
    /// extreme chord is a whole edge) or is a degenerate limit.
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl Pencil {
    pub fn t_min(&self) -> f64 {
        self.regimes.first().map(|r| r.t_lo).unwrap_or(0.0)
    }

    pub fn t_max(&self) -> f64 {
        self.regimes.last().map(|r| r.t_hi).unwrap_or(0.0)
    }

    pub fn regime_index(&self, t: f64) -> usize {
        self.regimes
            .iter()
            .position(|r| t <= r.t_hi)
            .unwrap_or(self.regimes.len() - 1)
    }

    /// Chord length at parameter `t` within `regime`.
    pub fn chord_length(&self, regime: usize, t: f64) -> f64 {
        let (l0, l1) = self.regimes[regime].chord_coeffs(self.dir);
        l0 + l1 * t
    }

    pub fn scale_at(&self, regime: usize, t: f64) -> f64 {
        self.dist / self.chord_length(regime, t)
    }

    pub fn center_at(&self, regime: usize, t: f64) -> Point {
        let u = self.regimes[regime].entry.at(t);
        self.p - u * self.scale_at(regime, t)
    }

    pub fn homothet_at(&self, regime: usize, t: f64) -> Result<Homothet> {
        Homothet::new(
            self.shape.clone(),
            self.center_at(regime, t),
            self.scale_at(regime, t),
        )
    }

    /// Open interval of parameters in `regime` for which `v` lies in the
    /// interior of the homothet (unclipped; may extend past the regime).
    pub fn interior_interval(&self, regime: usize, v: Point) -> Option<(f64, f64)> {
        let r = &self.regimes[regime];
        let (l0, l1) = r.chord_coeffs(self.dir);
        let a = (v - self.p) * (1.0 / self.dist);
        // z(t) = u(t) + a L(t) is the preimage of v; it must be inside C
        let z0 = r.entry.a + a * l0;
        let z1 = r.entry.b + a * l1;
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let shape = &self.shape;
        for k in 0..shape.len() {
            let n = shape.normal(k);
            let c0 = shape.offset(k) - n.dot(z0);
            let c1 = n.dot(z1);
            // need c1 t < c0
            if c1 == 0.0 {
                if c0 <= 0.0 {
                    return None;
                }
            } else if c1 > 0.0 {
                hi = hi.min(c0 / c1);
            } else {
                lo = lo.max(c0 / c1);
            }
            if lo >= hi {
                return None;
            }
        }
        Some((lo, hi))
    }
}

/// Decompose the family of homothets of `shape` through `p` and `q` into
/// regimes ordered by chord offset.
pub fn pencil_through(shape: &Arc<ConvexShape>, p: Point, q: Point) -> Result<Pencil> {
    if p == q {
        return Err(Error::InvalidArgument(
            "pencil needs two distinct points".into(),
        ));
    }
    let d = q - p;
    let dist = d.norm();
    let dir = d * (1.0 / dist);
    let normal = dir.perp();
    let rel = shape.rel_vertices();
    let k = rel.len();
    let offs: Vec<f64> = rel.iter().map(|&v| normal.dot(v)).collect();
    let mut breaks = offs.clone();
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    let (t_min, t_max) = (breaks[0], *breaks.last().unwrap());
    let span = t_max - t_min;
    if !(span > 0.0) {
        return Err(Error::DegenerateDirection);
    }
    // drop slivers that are below rounding noise
    let mut cleaned: Vec<f64> = vec![t_min];
    for &b in &breaks[1..] {
        if b - cleaned.last().unwrap() > 1e-14 * span {
            cleaned.push(b);
        }
    }
    *cleaned.last_mut().unwrap() = t_max;
    if cleaned.len() < 2 {
        return Err(Error::DegenerateDirection);
    }

    let mut regimes = Vec::with_capacity(cleaned.len() - 1);
    for w in cleaned.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mid = 0.5 * (lo + hi);
        let mut hits: Vec<(usize, AffinePoint)> = Vec::with_capacity(2);
        for i in 0..k {
            let j = (i + 1) % k;
            let (si, sj) = (offs[i] - mid, offs[j] - mid);
            if (si < 0.0) != (sj < 0.0) && si != sj {
                let e = rel[j] - rel[i];
                let ds = offs[j] - offs[i];
                let b = e * (1.0 / ds);
                let a = rel[i] - b * offs[i];
                hits.push((i, AffinePoint { a, b }));
            }
        }
        if hits.len() != 2 {
            return Err(Error::DegenerateDirection);
        }
        let (h0, h1) = (hits[0], hits[1]);
        let (entry, exit) = if dir.dot(h0.1.at(mid)) <= dir.dot(h1.1.at(mid)) {
            (h0, h1)
        } else {
            (h1, h0)
        };
        regimes.push(PencilRegime {
            t_lo: lo,
            t_hi: hi,
            entry_edge: entry.0,
            exit_edge: exit.0,
            entry: entry.1,
            exit: exit.1,
        });
    }

    // an end is closed when the support line there holds an edge, judged
    // with the same resolution as the sliver cleanup; the end chord length
    // itself is rounding noise for nearly parallel edges
    let tied = |extreme: f64| {
        offs.iter()
            .filter(|&&o| (o - extreme).abs() <= 1e-14 * span)
            .count()
            >= 2
    };
    let closed_lo = tied(t_min);
    let closed_hi = tied(t_max);

    Ok(Pencil {
        shape: shape.clone(),
        p,
        q,
        dir,
        normal,
        dist,
        regimes,
        closed_lo,
        closed_hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn horizontal_pair_in_square() {
        let sq = Arc::new(ConvexShape::square());
        let pen = pencil_through(&sq, pt(0., 0.), pt(1., 0.)).unwrap();
        // chords parallel to x run West side to East side at every offset
        assert_eq!(pen.regimes.len(), 1);
        assert!(pen.closed_lo && pen.closed_hi);
        let r = &pen.regimes[0];
        assert_eq!((r.entry_edge, r.exit_edge), (3, 1));
        for t in [-0.5, -0.2, 0.0, 0.4, 0.5] {
            assert!((pen.scale_at(0, t) - 1.0).abs() < 1e-12);
        }
        let h = pen.homothet_at(0, 0.5).unwrap();
        // top extreme: square [0,1] x [-1,0]
        assert!(h.center.dist(pt(0.5, -0.5)) < 1e-12);
    }

    #[test]
    fn vertical_pair_is_rotated_horizontal_case() {
        let sq = Arc::new(ConvexShape::square());
        let ph = pencil_through(&sq, pt(0., 0.), pt(1., 0.)).unwrap();
        let pv = pencil_through(&sq, pt(0., 0.), pt(0., 1.)).unwrap();
        assert_eq!(ph.regimes.len(), pv.regimes.len());
        assert_eq!(pv.closed_lo, ph.closed_lo);
        for t in [-0.4, 0.0, 0.3] {
            let ch = ph.center_at(0, t);
            let cv = pv.center_at(0, t);
            // rotating the horizontal configuration by +90 degrees maps (x, y) to (-y, x)
            assert!(cv.dist(pt(-ch.y, ch.x)) < 1e-12, "{cv:?} vs {ch:?}");
            assert!((ph.scale_at(0, t) - pv.scale_at(0, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_pair_has_open_ends() {
        let sq = Arc::new(ConvexShape::square());
        let pen = pencil_through(&sq, pt(0., 0.), pt(1., 1.)).unwrap();
        assert!(!pen.closed_lo && !pen.closed_hi);
        assert_eq!(pen.regimes.len(), 2);
        // the diagonal chord is the unique minimum-scale homothet: the unit square
        let t = pen.regimes[0].t_hi;
        let h = pen.homothet_at(0, t).unwrap();
        assert!((h.scale - 1.0).abs() < 1e-12);
        assert!(h.center.dist(pt(0.5, 0.5)) < 1e-12);
    }

    #[test]
    fn regimes_put_both_points_on_boundary() {
        let shapes = [
            ConvexShape::square(),
            ConvexShape::equilateral_triangle(),
            ConvexShape::regular_ngon(9).unwrap(),
            ConvexShape::rectangle(3.0, 1.0).unwrap(),
        ];
        let pairs = [
            (pt(0.1, 0.2), pt(0.7, 0.45)),
            (pt(-1.0, 2.0), pt(-1.3, -0.5)),
            (pt(0., 0.), pt(0., 2.)),
        ];
        for shape in shapes {
            let shape = Arc::new(shape);
            for &(p, q) in &pairs {
                let pen = pencil_through(&shape, p, q).unwrap();
                for (ri, r) in pen.regimes.iter().enumerate() {
                    for k in 1..=10 {
                        let t = r.t_lo + (r.t_hi - r.t_lo) * k as f64 / 11.0;
                        let h = pen.homothet_at(ri, t).unwrap();
                        assert!(h.boundary_distance(p) < 1e-9);
                        assert!(h.boundary_distance(q) < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn interior_interval_matches_pointwise_test() {
        use crate::geom::ContainMode;
        let shape = Arc::new(ConvexShape::regular_ngon(5).unwrap());
        let (p, q) = (pt(0.0, 0.0), pt(1.0, 0.3));
        let pen = pencil_through(&shape, p, q).unwrap();
        let v = pt(0.4, 0.5);
        for (ri, r) in pen.regimes.iter().enumerate() {
            let iv = pen.interior_interval(ri, v);
            for k in 1..50 {
                let t = r.t_lo + (r.t_hi - r.t_lo) * k as f64 / 50.0;
                let inside = pen
                    .homothet_at(ri, t)
                    .unwrap()
                    .contains(v, ContainMode::Interior);
                let predicted = iv.is_some_and(|(lo, hi)| lo < t && t < hi);
                assert_eq!(inside, predicted, "regime {ri} t {t}");
            }
        }
    }
}
