//! Shortest paths on Euclidean-weighted graphs.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::geom::Point;

#[derive(PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Single-source distances; unreachable vertices are `f64::INFINITY`.
pub fn dijkstra(points: &[Point], adjacency: &[Vec<usize>], src: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; points.len()];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Reverse((Key(0.0), src)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &v in &adjacency[u] {
            let nd = d + points[u].dist(points[v]);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((Key(nd), v)));
            }
        }
    }
    dist
}

pub fn all_pairs_shortest_paths(points: &[Point], adjacency: &[Vec<usize>]) -> Vec<Vec<f64>> {
    (0..points.len())
        .into_par_iter()
        .map(|s| dijkstra(points, adjacency, s))
        .collect()
}
