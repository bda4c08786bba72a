//! Seeded random instances in the unit square.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{on_open_segment, properly_intersect, Point};
use crate::visibility::Instance;

/// Minimum pairwise distance between generated points.
pub const MIN_SEPARATION: f64 = 1e-3;
/// Rejection-sampling attempts allowed per requested item.
const RETRIES_PER_ITEM: usize = 1000;

pub fn generate_instance(seed: u64, n: usize, constraints: usize) -> Result<Instance> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 points, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_points(&mut rng, n)?;
    let segs = sample_constraints(&mut rng, &points, constraints)?;
    Instance::new(points, segs)
}

fn sample_points(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Point>> {
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut budget = RETRIES_PER_ITEM * n;
    while points.len() < n {
        if budget == 0 {
            return Err(Error::GenerationFailed(format!(
                "placed {} of {n} points",
                points.len()
            )));
        }
        budget -= 1;
        let p = Point::new(rng.gen::<f64>(), rng.gen::<f64>());
        if points.iter().all(|q| q.dist(p) >= MIN_SEPARATION) {
            points.push(p);
        }
    }
    Ok(points)
}

fn sample_constraints(
    rng: &mut ChaCha8Rng,
    points: &[Point],
    count: usize,
) -> Result<Vec<[usize; 2]>> {
    let n = points.len();
    let max_pairs = n * (n - 1) / 2;
    if count > max_pairs {
        return Err(Error::InvalidArgument(format!(
            "{count} constraints requested on {n} points"
        )));
    }
    let mut segs: Vec<[usize; 2]> = Vec::with_capacity(count);
    let mut budget = RETRIES_PER_ITEM * count.max(1);
    while segs.len() < count {
        if budget == 0 {
            return Err(Error::GenerationFailed(format!(
                "placed {} of {count} constraints",
                segs.len()
            )));
        }
        budget -= 1;
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let (a, b) = (a.min(b), a.max(b));
        let (pa, pb) = (points[a], points[b]);
        let ok = segs
            .iter()
            .all(|&[c, d]| (c, d) != (a, b) && !properly_intersect(pa, pb, points[c], points[d]))
            && !points.iter().any(|&x| on_open_segment(pa, pb, x));
        if ok {
            segs.push([a, b]);
        }
    }
    Ok(segs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let inst = generate_instance(1, 2, 0).unwrap();
        assert_eq!(inst.len(), 2);
        assert!(inst.constraints().is_empty());
    }

    #[test]
    fn reloads_and_is_deterministic() {
        let a = generate_instance(7, 30, 5).unwrap();
        assert_eq!(a.constraints().len(), 5);
        let text = a.to_json_string();
        assert_eq!(Instance::from_json_str(&text).unwrap(), a);
        assert_eq!(generate_instance(7, 30, 5).unwrap().to_json_string(), text);
        assert_ne!(generate_instance(8, 30, 5).unwrap().to_json_string(), text);
    }

    #[test]
    fn rejects_impossible_requests() {
        assert!(matches!(
            generate_instance(0, 1, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            generate_instance(0, 3, 4),
            Err(Error::InvalidArgument(_))
        ));
    }
}
