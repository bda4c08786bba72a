//! Structural invariants of constructed graphs and shape constants on random inputs.

use std::sync::Arc;

use proptest::prelude::*;

use cgdg::cgdg::{build_cgdg, build_rect_cgdg, CgdgGraph};
use cgdg::constants::{compute_alpha, compute_kappa};
use cgdg::generate::generate_instance;
use cgdg::verify::faces::faces;
use cgdg::verify::paths::all_pairs_shortest_paths;
use cgdg::verify::{check_planarity, qualifying_pairs};
use cgdg::visibility::build_visibility_graph;
use cgdg::{ConvexShape, Point};

fn shapes() -> Vec<ConvexShape> {
    vec![
        ConvexShape::square(),
        ConvexShape::rectangle(2.0, 1.0).unwrap(),
        ConvexShape::equilateral_triangle(),
        ConvexShape::regular_ngon(5).unwrap(),
        ConvexShape::regular_ngon(16).unwrap(),
    ]
}

fn graph(seed: u64, n: usize, k: usize, shape: usize) -> CgdgGraph {
    let inst = generate_instance(seed, n, k.min(n - 1)).unwrap();
    build_cgdg(&inst, &Arc::new(shapes()[shape].clone())).unwrap()
}

/// Labels of connected components by union-find.
fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

fn floyd(points: &[Point], adjacency: &[Vec<usize>]) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for u in 0..n {
        d[u][u] = 0.0;
        for &v in &adjacency[u] {
            d[u][v] = points[u].dist(points[v]);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn transform(shape: &ConvexShape, angle: f64, scale: f64, shift: Point) -> ConvexShape {
    let (s, c) = angle.sin_cos();
    let f = |p: Point| Point::new(c * p.x - s * p.y, s * p.x + c * p.y) * scale + shift;
    ConvexShape::new(
        shape.vertices().iter().map(|&v| f(v)).collect(),
        f(shape.origin()),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planar_subgraph_of_visibility(seed in any::<u64>(), n in 2usize..30, k in 0usize..8, shape in 0usize..5) {
        let g = graph(seed, n, k, shape);
        prop_assert!(check_planarity(&g).passed());
        let vg = build_visibility_graph(&g.instance);
        for e in &g.edges {
            prop_assert!(vg.is_visible(e.u, e.v), "edge {}-{} is not a visibility edge", e.u, e.v);
        }
    }

    #[test]
    fn witnesses_touch_endpoints_and_are_empty(seed in any::<u64>(), n in 2usize..20, k in 0usize..5, shape in 0usize..5) {
        let g = graph(seed, n, k, shape);
        let inst = &g.instance;
        let vg = build_visibility_graph(inst);
        for e in &g.edges {
            let h = &e.witness;
            prop_assert!(h.on_boundary(inst.point(e.u)) && h.on_boundary(inst.point(e.v)));
            for x in 0..inst.len() {
                if x == e.u || x == e.v || !vg.is_visible(e.u, x) || !vg.is_visible(e.v, x) {
                    continue;
                }
                prop_assert!(h.depth(inst.point(x)) <= h.tolerance(), "vertex {x} inside witness of {}-{}", e.u, e.v);
            }
        }
    }

    #[test]
    fn same_components_as_visibility(seed in any::<u64>(), n in 2usize..30, k in 0usize..10, shape in 0usize..5) {
        let g = graph(seed, n, k, shape);
        let vg = build_visibility_graph(&g.instance);
        let a = components(g.instance.len(), g.edge_pairs().into_iter());
        let b = components(g.instance.len(), vg.edges());
        for u in 0..a.len() {
            for v in u + 1..a.len() {
                prop_assert_eq!(a[u] == a[v], b[u] == b[v]);
            }
        }
    }

    #[test]
    fn shortest_paths_match_floyd(seed in any::<u64>(), n in 2usize..13, k in 0usize..4, shape in 0usize..5) {
        let g = graph(seed, n, k, shape);
        let pts = g.instance.points();
        let fast = all_pairs_shortest_paths(pts, &g.adjacency);
        let slow = floyd(pts, &g.adjacency);
        for u in 0..pts.len() {
            for v in 0..pts.len() {
                let (a, b) = (fast[u][v], slow[u][v]);
                prop_assert!(a == b || (a - b).abs() <= 1e-9, "{u}-{v}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn qualifying_pairs_share_a_face(seed in any::<u64>(), n in 3usize..25, k in 0usize..6, shape in 0usize..5) {
        let g = graph(seed, n, k, shape);
        let vg = build_visibility_graph(&g.instance);
        let fs = faces(g.instance.points(), &g.adjacency);
        for (u, v) in qualifying_pairs(&g, &vg) {
            // isolated vertices lie in a face without appearing on any cycle
            if g.adjacency[u].is_empty() || g.adjacency[v].is_empty() {
                continue;
            }
            prop_assert!(fs.faces.iter().any(|f| f.contains(&u) && f.contains(&v)), "{u}-{v} share no face");
        }
    }

    #[test]
    fn rect_builder_is_planar(seed in any::<u64>(), n in 2usize..30, k in 0usize..8, ratio in 1.0f64..5.0) {
        let inst = generate_instance(seed, n, k.min(n - 1)).unwrap();
        let g = build_rect_cgdg(&inst, ratio, 1.0).unwrap();
        prop_assert!(check_planarity(&g).passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn constants_invariant_under_similarity(
        shape in 0usize..5,
        angle in 0.0f64..std::f64::consts::TAU,
        scale in 0.1f64..10.0,
        dx in -5.0f64..5.0,
        dy in -5.0f64..5.0,
    ) {
        let base = &shapes()[shape];
        let moved = transform(base, angle, scale, Point::new(dx, dy));
        let (a0, _) = compute_alpha(base, 32);
        let (a1, _) = compute_alpha(&moved, 32);
        prop_assert!((a0 - a1).abs() < 1e-6, "alpha {a0} vs {a1}");
        let (k0, _, _) = compute_kappa(base, 32);
        let (k1, _, _) = compute_kappa(&moved, 32);
        prop_assert!((k0 - k1).abs() <= 1e-4 * k0, "kappa {k0} vs {k1}");
    }
}

#[test]
fn kappa_decreases_towards_half_pi_for_finer_ngons() {
    let mut prev = f64::INFINITY;
    for k in [4, 8, 16, 32] {
        let (kappa, _, _) = compute_kappa(&ConvexShape::regular_ngon(k).unwrap(), 64);
        assert!(kappa < prev, "k={k}: {kappa} >= {prev}");
        assert!(kappa > std::f64::consts::FRAC_PI_2);
        prev = kappa;
    }
}
