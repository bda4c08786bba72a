//! The modified constrained generalized Delaunay graph: `pq` is an edge iff
//! `p` sees `q` and some homothet with `p` and `q` on its boundary has no
//! vertex visible to both in its interior.

mod grow;
mod rect;
pub(crate) mod sweep;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{on_open_segment, ConvexShape, Homothet};
use crate::pencil::pencil_through;
use crate::visibility::{build_visibility_graph, visible, Instance, VisibilityGraph};

pub use grow::grow_first_hit;
pub use rect::{build_rect_cgdg, build_rect_cgdg_with, rect_edge_decision};
use sweep::{sweep, PointCheck, SweepInput, SweepOutcome};

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWitness {
    pub u: usize,
    pub v: usize,
    pub witness: Homothet,
    /// Added only because `uv` is a constraint; `witness` is then not empty.
    pub forced: bool,
}

/// What to do when a pair sits on a general-position violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneralPositionPolicy {
    #[default]
    Strict,
    /// Treat the pair as a non-edge and record it.
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildOptions {
    pub policy: GeneralPositionPolicy,
    /// Keep every constraint as an edge (the unmodified graph).
    pub force_constraints: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmbiguousPair {
    pub u: usize,
    pub v: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EdgeDecision {
    Witness(Homothet),
    Absent,
    Ambiguous(String),
}

#[derive(Debug, Clone)]
pub struct CgdgGraph {
    pub instance: Instance,
    pub shape: Arc<ConvexShape>,
    /// Sorted by `(u, v)` with `u < v`.
    pub edges: Vec<EdgeWitness>,
    pub adjacency: Vec<Vec<usize>>,
    /// Pairs dropped under the lenient policy.
    pub diagnostics: Vec<AmbiguousPair>,
    /// `(l, s)` when built by the rectangle specialization.
    pub rect: Option<(f64, f64)>,
}

impl CgdgGraph {
    pub(crate) fn assemble(
        instance: Instance,
        shape: Arc<ConvexShape>,
        mut edges: Vec<EdgeWitness>,
        mut diagnostics: Vec<AmbiguousPair>,
        rect: Option<(f64, f64)>,
    ) -> Self {
        edges.sort_by_key(|e| (e.u, e.v));
        diagnostics.sort_by_key(|d| (d.u, d.v));
        let mut adjacency = vec![Vec::new(); instance.len()];
        for e in &edges {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        CgdgGraph {
            instance,
            shape,
            edges,
            adjacency,
            diagnostics,
            rect,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|a| a.binary_search(&v).is_ok())
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<&EdgeWitness> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by_key(&(a, b), |e| (e.u, e.v))
            .ok()
            .map(|i| &self.edges[i])
    }
}

/// Vertices other than `p`, `q` that see both.
pub(crate) fn relevant_vertices<F: Fn(usize, usize) -> bool>(
    n: usize,
    p: usize,
    q: usize,
    vis: F,
) -> Vec<usize> {
    (0..n)
        .filter(|&v| v != p && v != q && vis(p, v) && vis(q, v))
        .collect()
}

/// Classify a candidate homothet against the relevant vertices.
pub(crate) fn classify(h: &Homothet, inst: &Instance, relevant: &[usize]) -> PointCheck {
    let tol = h.tolerance();
    let mut on_boundary = Vec::new();
    for &v in relevant {
        let d = h.depth(inst.point(v));
        if d > tol {
            return PointCheck::Occupied;
        }
        if d >= -tol {
            on_boundary.push(v);
        }
    }
    if on_boundary.len() >= 2 {
        PointCheck::Ambiguous(format!(
            "vertices {on_boundary:?} share a homothet boundary with the pair"
        ))
    } else {
        PointCheck::Empty
    }
}

fn decide<F: Fn(usize, usize) -> bool>(
    inst: &Instance,
    shape: &Arc<ConvexShape>,
    p: usize,
    q: usize,
    vis: F,
) -> Result<EdgeDecision> {
    if p == q || !vis(p, q) {
        return Ok(EdgeDecision::Absent);
    }
    let (pp, pq) = (inst.point(p), inst.point(q));
    let relevant = relevant_vertices(inst.len(), p, q, &vis);
    if relevant
        .iter()
        .any(|&v| on_open_segment(pp, pq, inst.point(v)))
    {
        return Ok(EdgeDecision::Absent);
    }
    let pencil = pencil_through(shape, pp, pq)?;

    // per-vertex interior intervals, merged across regime cuts
    let mut intervals = Vec::new();
    for &v in &relevant {
        let pv = inst.point(v);
        let mut open: Option<(f64, f64)> = None;
        for (ri, r) in pencil.regimes.iter().enumerate() {
            let Some((lo, hi)) = pencil.interior_interval(ri, pv) else {
                if let Some(iv) = open.take() {
                    intervals.push(iv);
                }
                continue;
            };
            let (a, b) = (lo.max(r.t_lo), hi.min(r.t_hi));
            if a >= b {
                if let Some(iv) = open.take() {
                    intervals.push(iv);
                }
                continue;
            }
            let lo_cut = lo < r.t_lo;
            let hi_cut = hi > r.t_hi;
            let start = if lo_cut && ri == 0 { lo } else { a };
            let end = if hi_cut && ri + 1 == pencil.regimes.len() {
                hi
            } else {
                b
            };
            match open.take() {
                Some((s, e)) if lo_cut && e == r.t_lo => open = Some((s, end)),
                Some(iv) => {
                    intervals.push(iv);
                    open = Some((start, end));
                }
                None => open = Some((start, end)),
            }
            if !hi_cut {
                intervals.extend(open.take());
            }
        }
        intervals.extend(open);
    }

    let input = SweepInput {
        t0: pencil.t_min(),
        t1: pencil.t_max(),
        closed_lo: pencil.closed_lo,
        closed_hi: pencil.closed_hi,
        intervals,
    };
    let at = |t: f64| pencil.homothet_at(pencil.regime_index(t), t);
    let outcome = sweep(&input, |t| match at(t) {
        Ok(h) => classify(&h, inst, &relevant),
        Err(_) => PointCheck::Occupied,
    });
    Ok(match outcome {
        SweepOutcome::Witness(t) => EdgeDecision::Witness(at(t)?),
        SweepOutcome::Absent => EdgeDecision::Absent,
        SweepOutcome::Ambiguous(d) => EdgeDecision::Ambiguous(d),
    })
}

/// Decide the edge predicate for `pq` without applying a policy.
pub fn edge_decision(
    inst: &Instance,
    shape: &Arc<ConvexShape>,
    p: usize,
    q: usize,
) -> Result<EdgeDecision> {
    decide(inst, shape, p, q, |a, b| visible(inst, a, b))
}

/// A witness homothet for `pq`, or `None` when the edge is absent. Raises on
/// four co-homothetic vertices.
pub fn edge_exists(
    inst: &Instance,
    shape: &Arc<ConvexShape>,
    p: usize,
    q: usize,
) -> Result<Option<EdgeWitness>> {
    let (u, v) = if p < q { (p, q) } else { (q, p) };
    match edge_decision(inst, shape, p, q)? {
        EdgeDecision::Witness(witness) => Ok(Some(EdgeWitness {
            u,
            v,
            witness,
            forced: false,
        })),
        EdgeDecision::Absent => Ok(None),
        EdgeDecision::Ambiguous(detail) => Err(Error::GeneralPositionViolation { p, q, detail }),
    }
}

pub fn build_cgdg(inst: &Instance, shape: &Arc<ConvexShape>) -> Result<CgdgGraph> {
    build_cgdg_with(inst, shape, BuildOptions::default())
}

pub(crate) type PairDecider<'a> = dyn Fn(usize, usize) -> Result<EdgeDecision> + Sync + 'a;

/// Run `decide` over every visible pair in parallel and apply the options.
pub(crate) fn collect_edges(
    inst: &Instance,
    shape: &Arc<ConvexShape>,
    vg: &VisibilityGraph,
    opts: BuildOptions,
    decide: &PairDecider<'_>,
) -> Result<(Vec<EdgeWitness>, Vec<AmbiguousPair>)> {
    let pairs: Vec<(usize, usize)> = vg.edges().collect();
    let decisions: Vec<Result<EdgeDecision>> =
        pairs.par_iter().map(|&(u, v)| decide(u, v)).collect();
    let mut edges = Vec::new();
    let mut diagnostics = Vec::new();
    for (&(u, v), d) in pairs.iter().zip(decisions) {
        let forced = opts.force_constraints && inst.is_constraint(u, v);
        match d? {
            EdgeDecision::Witness(witness) => edges.push(EdgeWitness {
                u,
                v,
                witness,
                forced: false,
            }),
            EdgeDecision::Absent if forced => edges.push(forced_edge(inst, shape, u, v)?),
            EdgeDecision::Absent => {}
            EdgeDecision::Ambiguous(detail) => match opts.policy {
                GeneralPositionPolicy::Strict => {
                    return Err(Error::GeneralPositionViolation { p: u, q: v, detail })
                }
                GeneralPositionPolicy::Lenient => {
                    if forced {
                        edges.push(forced_edge(inst, shape, u, v)?);
                    }
                    diagnostics.push(AmbiguousPair { u, v, detail });
                }
            },
        }
    }
    Ok((edges, diagnostics))
}

fn forced_edge(
    inst: &Instance,
    shape: &Arc<ConvexShape>,
    u: usize,
    v: usize,
) -> Result<EdgeWitness> {
    let pencil = pencil_through(shape, inst.point(u), inst.point(v))?;
    let t = 0.5 * (pencil.t_min() + pencil.t_max());
    let witness = pencil.homothet_at(pencil.regime_index(t), t)?;
    Ok(EdgeWitness {
        u,
        v,
        witness,
        forced: true,
    })
}

pub fn build_cgdg_with(
    inst: &Instance,
    shape: &Arc<ConvexShape>,
    opts: BuildOptions,
) -> Result<CgdgGraph> {
    let vg = build_visibility_graph(inst);
    let decider = |u: usize, v: usize| decide(inst, shape, u, v, |a, b| vg.is_visible(a, b));
    let (edges, diagnostics) = collect_edges(inst, shape, &vg, opts, &decider)?;
    Ok(CgdgGraph::assemble(
        inst.clone(),
        shape.clone(),
        edges,
        diagnostics,
        None,
    ))
}
