//! End-to-end construct-and-verify runs and their JSON reports.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cgdg::{
    build_cgdg_with, build_rect_cgdg_with, AmbiguousPair, BuildOptions, CgdgGraph,
    GeneralPositionPolicy,
};
use crate::constants::{rect_bound, shape_constants, theorem1_bound, ShapeConstants};
use crate::error::{Error, Result};
use crate::generate::generate_instance;
use crate::geom::{ConvexShape, Point};
use crate::io::ShapeSpec;
use crate::verify::oracle::{compare_with_grid, DEFAULT_GRID_STEP};
use crate::verify::{
    check_diamond, check_half_empty, check_planarity, check_visible_pair, stretch_with_bound,
    Status, Verdict, HALF_EMPTY_GRID,
};
use crate::visibility::{build_visibility_graph, Instance};

pub const SCHEMA_VERSION: u32 = 1;
/// Key of the wall-clock field, which comparisons ignore.
pub const TIMING_FIELD: &str = "timing_ms";
pub const DEFAULT_RESOLUTION: usize = 64;

/// Numeric knobs a run may override.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Boundary samples seeding the shape-constant searches.
    pub resolution: usize,
    /// Grid step of the brute-force edge oracle.
    pub grid_step: f64,
    /// Samples per side when checking half-empty rectangles.
    pub half_empty_grid: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            resolution: DEFAULT_RESOLUTION,
            grid_step: DEFAULT_GRID_STEP,
            half_empty_grid: HALF_EMPTY_GRID,
        }
    }
}

impl Tolerances {
    /// Apply one `key=value` override.
    pub fn set(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{assignment}`")))?;
        let bad = || Error::Parse(format!("bad value for {key}: `{value}`"));
        match key.trim() {
            "resolution" => self.resolution = value.trim().parse().map_err(|_| bad())?,
            "grid_step" => {
                let v: f64 = value.trim().parse().map_err(|_| bad())?;
                if !(v > 0.0 && v < 1.0) {
                    return Err(bad());
                }
                self.grid_step = v;
            }
            "half_empty_grid" => self.half_empty_grid = value.trim().parse().map_err(|_| bad())?,
            other => return Err(Error::Parse(format!("unknown tolerance `{other}`"))),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    pub tolerances: Tolerances,
    pub grid_oracle: bool,
    pub policy: GeneralPositionPolicy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantsSummary {
    pub alpha: f64,
    pub kappa: f64,
    pub center_o: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StretchSummary {
    pub max_ratio: f64,
    pub argmax_pair: Option<(usize, usize)>,
    pub is_triangulation: bool,
    pub theorem1_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rect_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub shape: String,
    pub n: usize,
    pub constraints: usize,
    pub visibility_edges: usize,
    pub edges: Vec<(usize, usize)>,
    pub constants: ConstantsSummary,
    pub stretch: StretchSummary,
    pub checks: Vec<Verdict>,
    pub diagnostics: Vec<AmbiguousPair>,
    pub passed: bool,
    pub timing_ms: f64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// The report without its timing field.
    pub fn comparable(&self) -> Value {
        strip_timing(serde_json::to_value(self).expect("report serializes"))
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Verdict> {
        self.checks.iter().filter(|v| v.failed())
    }
}

/// Drop every timing field from a serialized report.
pub fn strip_timing(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.remove(TIMING_FIELD);
        for x in m.values_mut() {
            *x = strip_timing(x.take());
        }
    } else if let Value::Array(a) = &mut v {
        for x in a.iter_mut() {
            *x = strip_timing(x.take());
        }
    }
    v
}

/// A shape with its constants, reusable across instances.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub spec: ShapeSpec,
    pub shape: Arc<ConvexShape>,
    pub constants: ShapeConstants,
    pub options: RunOptions,
}

impl Pipeline {
    pub fn new(spec: ShapeSpec, options: RunOptions) -> Result<Self> {
        let shape = spec.build()?;
        let constants = shape_constants(&shape, options.tolerances.resolution)?;
        Ok(Pipeline {
            spec,
            shape,
            constants,
            options,
        })
    }

    pub fn build(&self, inst: &Instance) -> Result<CgdgGraph> {
        build_for_spec(&self.spec, &self.shape, inst, self.options.policy)
    }

    /// Build the graph for `inst` and run every check against it.
    pub fn run(&self, inst: &Instance) -> Result<(Report, CgdgGraph)> {
        let start = Instant::now();
        let g = self.build(inst)?;
        let vg = build_visibility_graph(inst);
        let ShapeConstants {
            alpha,
            kappa,
            center_o,
            ..
        } = self.constants;

        let mut checks = vec![
            check_planarity(&g),
            check_diamond(&g, alpha),
            check_visible_pair(&g, kappa),
        ];

        let probe = stretch_with_bound(&g, f64::INFINITY, false);
        let t1 = theorem1_bound(alpha, kappa, probe.is_triangulation)?;
        let stretch = stretch_with_bound(&g, t1, false);
        checks.push(match stretch.disconnected_pair {
            Some((u, v)) => Verdict::fail("connectivity", json!({ "pair": [u, v] })),
            None => Verdict::pass("connectivity"),
        });
        checks.push(stretch.verdict("theorem1"));

        let mut rb = None;
        if let Some((l, s)) = self.spec.rect_dims() {
            let bound = rect_bound(l.max(s), l.min(s))?;
            rb = Some(bound);
            let mut v = stretch_with_bound(&g, bound, false).verdict("rect_bound");
            v.note = Some(format!("bound {bound}"));
            checks.push(v);
            checks.push(self.half_empty(&g));
        }
        if self.options.grid_oracle {
            checks.push(
                compare_with_grid(inst, &self.shape, self.options.tolerances.grid_step)?.verdict(),
            );
        }

        let passed = checks.iter().all(|v| v.status != Status::Fail);
        let report = Report {
            schema_version: SCHEMA_VERSION,
            shape: self.spec.to_string(),
            n: inst.len(),
            constraints: inst.constraints().len(),
            visibility_edges: vg.edge_count(),
            edges: g.edge_pairs(),
            constants: ConstantsSummary {
                alpha,
                kappa,
                center_o,
            },
            stretch: StretchSummary {
                max_ratio: stretch.max_ratio,
                argmax_pair: stretch.argmax_pair,
                is_triangulation: stretch.is_triangulation,
                theorem1_bound: t1,
                rect_bound: rb,
            },
            checks,
            diagnostics: g.diagnostics.clone(),
            passed,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        Ok((report, g))
    }

    /// Half-empty implication on every edge's witness rectangle.
    fn half_empty(&self, g: &CgdgGraph) -> Verdict {
        let grid = self.options.tolerances.half_empty_grid;
        let verdicts: Vec<Verdict> = g
            .edges
            .par_iter()
            .filter(|e| !e.forced)
            .map(|e| check_half_empty(&g.instance, e.u, e.v, &e.witness, grid))
            .collect();
        let met = verdicts
            .iter()
            .filter(|v| v.status != Status::HypothesisNotMet)
            .count();
        let note = format!(
            "{met} of {} witnesses meet the hypothesis, grid {grid}",
            verdicts.len()
        );
        match verdicts.into_iter().find(Verdict::failed) {
            Some(v) => v.with_note(note),
            None => Verdict::pass("half_empty").with_note(note),
        }
    }
}

/// The rectangle specialization for rectangle specs, the general sweep otherwise.
pub fn build_for_spec(
    spec: &ShapeSpec,
    shape: &Arc<ConvexShape>,
    inst: &Instance,
    policy: GeneralPositionPolicy,
) -> Result<CgdgGraph> {
    let opts = BuildOptions {
        policy,
        force_constraints: false,
    };
    match spec.rect_dims() {
        // the closed form is oriented with the long side horizontal
        Some((l, s)) if l >= s => build_rect_cgdg_with(inst, l, s, opts),
        _ => build_cgdg_with(inst, shape, opts),
    }
}

/// Shapes and seeds of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub shapes: Vec<ShapeSpec>,
    pub seeds: std::ops::Range<u64>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            shapes: vec![
                ShapeSpec::Square,
                ShapeSpec::Rect { l: 2.0, s: 1.0 },
                ShapeSpec::Rect { l: 4.0, s: 1.0 },
                ShapeSpec::Equilateral,
                ShapeSpec::Ngon(16),
            ],
            seeds: 0..20,
        }
    }
}

impl std::str::FromStr for SweepSpec {
    type Err = Error;

    /// `SHAPE[,SHAPE...][;SEEDS]` where `SEEDS` is a count or `a..b`.
    fn from_str(s: &str) -> Result<Self> {
        let (shapes, seeds) = match s.split_once(';') {
            Some((a, b)) => (a, Some(b.trim())),
            None => (s, None),
        };
        let shapes = shapes
            .split(',')
            .map(|x| x.trim().parse())
            .collect::<Result<Vec<ShapeSpec>>>()?;
        let bad = || Error::Parse(format!("bad seed range in `{s}`"));
        let seeds = match seeds {
            None => 0..20,
            Some(r) => match r.split_once("..") {
                Some((a, b)) => a.parse().map_err(|_| bad())?..b.parse().map_err(|_| bad())?,
                None => 0..r.parse().map_err(|_| bad())?,
            },
        };
        if seeds.is_empty() {
            return Err(bad());
        }
        Ok(SweepSpec { shapes, seeds })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub shape: String,
    pub runs: usize,
    pub max_ratio: f64,
    pub argmax_seed: u64,
    /// Smallest Theorem 1 bound among the runs.
    pub theorem1_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rect_bound: Option<f64>,
    pub failed_seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub n: usize,
    pub constraints: usize,
    pub rows: Vec<SweepRow>,
    pub passed: bool,
    pub timing_ms: f64,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Fixed-width table of the rows.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<14} {:>5} {:>10} {:>10} {:>10}  failed\n",
            "shape", "runs", "max", "thm1", "rect"
        );
        for r in &self.rows {
            let rect = r.rect_bound.map_or("-".to_string(), |b| format!("{b:.4}"));
            out += &format!(
                "{:<14} {:>5} {:>10.4} {:>10.4} {:>10}  {}\n",
                r.shape,
                r.runs,
                r.max_ratio,
                r.theorem1_bound,
                rect,
                r.failed_seeds.len()
            );
        }
        out
    }
}

/// Generate and check one instance per (shape, seed) cell.
pub fn run_sweep(
    spec: &SweepSpec,
    n: usize,
    constraints: usize,
    options: RunOptions,
) -> Result<SweepReport> {
    let start = Instant::now();
    let pipelines = spec
        .shapes
        .par_iter()
        .map(|s| Pipeline::new(s.clone(), options))
        .collect::<Result<Vec<_>>>()?;
    let instances = spec
        .seeds
        .clone()
        .map(|seed| generate_instance(seed, n, constraints).map(|i| (seed, i)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(pipelines.len());
    for p in &pipelines {
        let cells = instances
            .par_iter()
            .map(|(seed, inst)| p.run(inst).map(|(r, _)| (*seed, r)))
            .collect::<Result<Vec<_>>>()?;
        let (mut max_ratio, mut argmax_seed, mut t1) = (1.0, spec.seeds.start, f64::INFINITY);
        let mut failed_seeds = Vec::new();
        for (seed, r) in &cells {
            if r.stretch.max_ratio > max_ratio {
                max_ratio = r.stretch.max_ratio;
                argmax_seed = *seed;
            }
            t1 = f64::min(t1, r.stretch.theorem1_bound);
            if !r.passed {
                failed_seeds.push(*seed);
            }
        }
        rows.push(SweepRow {
            shape: p.spec.to_string(),
            runs: cells.len(),
            max_ratio,
            argmax_seed,
            theorem1_bound: t1,
            rect_bound: cells.first().and_then(|(_, r)| r.stretch.rect_bound),
            failed_seeds,
        });
    }
    let passed = rows.iter().all(|r| r.failed_seeds.is_empty());
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        n,
        constraints,
        rows,
        passed,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_square_report() {
        let inst = Instance::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.5)], vec![]).unwrap();
        let p = Pipeline::new(ShapeSpec::Square, RunOptions::default()).unwrap();
        let (r, g) = p.run(&inst).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.stretch.max_ratio, 1.0);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(r.schema_version, 1);
        assert!(r.checks.iter().all(Verdict::passed));
    }

    #[test]
    fn comparable_drops_timing() {
        let v = json!({ "a": 1, "timing_ms": 2.0, "rows": [{ "timing_ms": 3.0, "b": 4 }] });
        assert_eq!(strip_timing(v), json!({ "a": 1, "rows": [{ "b": 4 }] }));
    }

    #[test]
    fn tolerance_overrides() {
        let mut t = Tolerances::default();
        t.set("grid_step=1e-4").unwrap();
        t.set("resolution = 16").unwrap();
        assert_eq!((t.grid_step, t.resolution), (1e-4, 16));
        assert!(t.set("grid_step=2").is_err());
        assert!(t.set("speed=1").is_err());
        assert!(t.set("resolution").is_err());
    }

    #[test]
    fn sweep_specs() {
        let s: SweepSpec = "square,ngon:16;5..8".parse().unwrap();
        assert_eq!(s.shapes, vec![ShapeSpec::Square, ShapeSpec::Ngon(16)]);
        assert_eq!(s.seeds, 5..8);
        assert_eq!("equilateral;3".parse::<SweepSpec>().unwrap().seeds, 0..3);
        assert!("square;4..4".parse::<SweepSpec>().is_err());
        assert_eq!(SweepSpec::default().shapes.len(), 5);
    }

    #[test]
    fn small_sweep_passes() {
        let spec: SweepSpec = "square,rect:2:1,equilateral;3".parse().unwrap();
        let r = run_sweep(&spec, 10, 2, RunOptions::default()).unwrap();
        assert!(r.passed, "{}", r.table());
        assert_eq!(r.rows.len(), 3);
        assert!(r
            .rows
            .iter()
            .all(|row| row.runs == 3 && row.max_ratio <= row.theorem1_bound));
    }
}
