//! Faces of a plane straight-line graph from its rotation system.

use std::cmp::Ordering;

use crate::geom::{orient, signed_area, Orientation, Point};

/// Counterclockwise angular order of directions, starting at the positive x-axis.
fn angular_cmp(a: Point, b: Point) -> Ordering {
    let half = |d: Point| {
        if d.y > 0.0 || (d.y == 0.0 && d.x > 0.0) {
            0
        } else {
            1
        }
    };
    let origin = Point::new(0.0, 0.0);
    half(a)
        .cmp(&half(b))
        .then_with(|| match orient(origin, a, b) {
            Orientation::CounterClockwise => Ordering::Less,
            Orientation::Clockwise => Ordering::Greater,
            Orientation::Collinear => Ordering::Equal,
        })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaceStructure {
    /// Vertex cycles, each walked with the face on its left.
    pub faces: Vec<Vec<usize>>,
    /// Signed area of each cycle; bounded faces are positive.
    pub areas: Vec<f64>,
}

impl FaceStructure {
    pub fn bounded(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces
            .iter()
            .zip(&self.areas)
            .filter(|(_, &a)| a > 0.0)
            .map(|(f, _)| f)
    }

    pub fn outer_count(&self) -> usize {
        self.areas.iter().filter(|&&a| a <= 0.0).count()
    }
}

pub fn faces(points: &[Point], adjacency: &[Vec<usize>]) -> FaceStructure {
    let n = points.len();
    let rot: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut ns = adjacency[v].clone();
            ns.sort_by(|&a, &b| angular_cmp(points[a] - points[v], points[b] - points[v]));
            ns
        })
        .collect();
    let pos = |v: usize, u: usize| {
        rot[v]
            .iter()
            .position(|&x| x == u)
            .expect("symmetric adjacency")
    };
    let mut seen: Vec<Vec<bool>> = rot.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = Vec::new();
    let mut areas = Vec::new();
    for s in 0..n {
        for si in 0..rot[s].len() {
            if seen[s][si] {
                continue;
            }
            let mut cycle = Vec::new();
            let (mut u, mut i) = (s, si);
            while !seen[u][i] {
                seen[u][i] = true;
                cycle.push(u);
                let v = rot[u][i];
                let d = rot[v].len();
                let j = (pos(v, u) + d - 1) % d;
                u = v;
                i = j;
            }
            let poly: Vec<Point> = cycle.iter().map(|&v| points[v]).collect();
            areas.push(signed_area(&poly));
            faces.push(cycle);
        }
    }
    FaceStructure { faces, areas }
}

/// Number of points on the boundary of the convex hull, collinear ones included.
pub fn hull_boundary_count(points: &[Point]) -> usize {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        p.x.partial_cmp(&q.x)
            .unwrap()
            .then(p.y.partial_cmp(&q.y).unwrap())
    });
    if idx.len() < 3 {
        return idx.len();
    }
    let build = |order: &mut dyn Iterator<Item = usize>| {
        let mut h: Vec<usize> = Vec::new();
        for i in order {
            while h.len() >= 2
                && orient(points[h[h.len() - 2]], points[h[h.len() - 1]], points[i])
                    == Orientation::Clockwise
            {
                h.pop();
            }
            h.push(i);
        }
        h
    };
    let lower = build(&mut idx.iter().copied());
    let upper = build(&mut idx.iter().rev().copied());
    let mut all: Vec<usize> = lower.into_iter().chain(upper).collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Connected, every bounded face a triangle and the outer face the convex hull.
pub fn is_triangulation(points: &[Point], adjacency: &[Vec<usize>]) -> bool {
    let n = points.len();
    let edges: usize = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
    if n < 3 || (2..n).all(|i| orient(points[0], points[1], points[i]) == Orientation::Collinear) {
        return n > 0 && edges + 1 == n && connected(adjacency);
    }
    let fs = faces(points, adjacency);
    if fs.outer_count() != 1 || !connected(adjacency) {
        return false;
    }
    let outer = fs
        .faces
        .iter()
        .zip(&fs.areas)
        .find(|(_, &a)| a <= 0.0)
        .map(|(f, _)| f)
        .unwrap();
    let mut distinct = outer.clone();
    distinct.sort_unstable();
    distinct.dedup();
    distinct.len() == outer.len()
        && outer.len() == hull_boundary_count(points)
        && fs.bounded().all(|f| f.len() == 3)
}

pub(crate) fn connected(adjacency: &[Vec<usize>]) -> bool {
    let n = adjacency.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn adj(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut a = vec![Vec::new(); n];
        for &(u, v) in edges {
            a[u].push(v);
            a[v].push(u);
        }
        a
    }

    #[test]
    fn triangle_faces() {
        let pts = [pt(0., 0.), pt(1., 0.), pt(0., 1.)];
        let a = adj(3, &[(0, 1), (1, 2), (2, 0)]);
        let fs = faces(&pts, &a);
        assert_eq!(fs.faces.len(), 2);
        assert_eq!(fs.bounded().count(), 1);
        assert!(is_triangulation(&pts, &a));
    }

    #[test]
    fn square_with_and_without_diagonal() {
        let pts = [pt(0., 0.), pt(1., 0.), pt(1., 1.), pt(0., 1.)];
        let cycle = [(0, 1), (1, 2), (2, 3), (3, 0)];
        let a = adj(4, &cycle);
        assert!(!is_triangulation(&pts, &a));
        let mut with = cycle.to_vec();
        with.push((0, 2));
        let a = adj(4, &with);
        assert!(is_triangulation(&pts, &a));
        assert_eq!(faces(&pts, &a).bounded().count(), 2);
    }

    #[test]
    fn tree_has_single_face() {
        let pts = [pt(0., 0.), pt(1., 0.), pt(0., 1.), pt(-1., -1.)];
        let fs = faces(&pts, &adj(4, &[(0, 1), (0, 2), (0, 3)]));
        assert_eq!(fs.faces.len(), 1);
        assert_eq!(fs.faces[0].len(), 6);
    }

    #[test]
    fn hull_counts_collinear_points() {
        let pts = [pt(0., 0.), pt(1., 0.), pt(2., 0.), pt(1., 1.), pt(1., 0.3)];
        assert_eq!(hull_boundary_count(&pts), 4);
    }
}
