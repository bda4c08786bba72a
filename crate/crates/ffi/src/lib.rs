//! C interface to the `cgdg` crate.
//!
//! Objects are opaque heap handles released with their `*_free` function.
//! Every fallible call returns a [`CgdgStatus`]; on failure the message for
//! the calling thread is available from [`cgdg_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use cgdg::cgdg::{build_cgdg_with, BuildOptions, CgdgGraph as Graph, GeneralPositionPolicy};
use cgdg::constants::shape_constants;
use cgdg::generate::generate_instance;
use cgdg::io::ShapeSpec;
use cgdg::report::build_for_spec;
use cgdg::verify::stretch_with_bound;
use cgdg::{ConvexShape, Error, Instance, Point};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgdgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidInstance = 3,
    InvalidShape = 4,
    GeneralPosition = 5,
    Parse = 6,
    GenerationFailed = 7,
    /// A caller buffer is too small; the required size was still written.
    BufferTooSmall = 8,
    Internal = 9,
}

/// Point set with constraint segments.
pub struct CgdgInstance(Instance);

/// Convex shape defining the distance function.
pub struct CgdgShape {
    spec: Option<ShapeSpec>,
    shape: Arc<ConvexShape>,
}

/// Constructed graph together with its instance.
pub struct CgdgGraph(Graph);

/// Shape constants and the two stretch bounds derived from them.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CgdgConstants {
    pub alpha: f64,
    pub kappa: f64,
    pub center_x: f64,
    pub center_y: f64,
    pub bound_triangulation: f64,
    pub bound_general: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CgdgStatus {
    match e {
        Error::NonFiniteCoordinate { .. } | Error::InvalidInstance(_) => CgdgStatus::InvalidInstance,
        Error::InvalidShape(_) | Error::DegenerateDirection => CgdgStatus::InvalidShape,
        Error::GeneralPositionViolation { .. } => CgdgStatus::GeneralPosition,
        Error::Parse(_) | Error::Io(_) => CgdgStatus::Parse,
        Error::GenerationFailed(_) => CgdgStatus::GenerationFailed,
        Error::InvalidArgument(_) | Error::PreconditionViolated(_) | Error::PointNotOnBoundary { .. } => {
            CgdgStatus::InvalidArgument
        }
    }
}

/// Run `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (CgdgStatus, String)>) -> CgdgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CgdgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CgdgStatus::Internal
        }
    }
}

fn lift<T>(r: cgdg::Result<T>) -> Result<T, (CgdgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (CgdgStatus, String) {
    (CgdgStatus::NullPointer, format!("{what} is null"))
}

/// Message of the last failed call on this thread, or null if none failed.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn cgdg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Build an instance from `n` interleaved `x, y` pairs and `m` index pairs.
///
/// # Safety
/// `xy` must point to `2 * n` doubles and `constraints` to `2 * m` indices
/// (it may be null when `m == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cgdg_instance_new(
    xy: *const f64,
    n: usize,
    constraints: *const usize,
    m: usize,
    out: *mut *mut CgdgInstance,
) -> CgdgStatus {
    guard(|| {
        if out.is_null() || (xy.is_null() && n > 0) || (constraints.is_null() && m > 0) {
            return Err(null("argument"));
        }
        let coords = if n == 0 { &[][..] } else { std::slice::from_raw_parts(xy, 2 * n) };
        let segs = if m == 0 { &[][..] } else { std::slice::from_raw_parts(constraints, 2 * m) };
        let points = coords.chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect();
        let segs = segs.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
        let inst = lift(Instance::new(points, segs))?;
        *out = Box::into_raw(Box::new(CgdgInstance(inst)));
        Ok(())
    })
}

/// Parse an instance from a nul-terminated JSON document.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cgdg_instance_from_json(json: *const c_char, out: *mut *mut CgdgInstance) -> CgdgStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| (CgdgStatus::Parse, e.to_string()))?;
        let inst = lift(Instance::from_json_str(text))?;
        *out = Box::into_raw(Box::new(CgdgInstance(inst)));
        Ok(())
    })
}

/// Seeded random instance in the unit square.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cgdg_instance_generate(
    seed: u64,
    n: usize,
    constraints: usize,
    out: *mut *mut CgdgInstance,
) -> CgdgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inst = lift(generate_instance(seed, n, constraints))?;
        *out = Box::into_raw(Box::new(CgdgInstance(inst)));
        Ok(())
    })
}

/// # Safety
/// `inst` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cgdg_instance_free(inst: *mut CgdgInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cgdg_instance_len(inst: *const CgdgInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.len())
}

/// Named shape: `square`, `rect:L:S`, `equilateral` or `ngon:K`.
///
/// # Safety
/// `name` must be a valid nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cgdg_shape_named(name: *const c_char, out: *mut *mut CgdgShape) -> CgdgStatus {
    guard(|| {
        if name.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let text = CStr::from_ptr(name).to_str().map_err(|e| (CgdgStatus::Parse, e.to_string()))?;
        let spec: ShapeSpec = lift(text.parse())?;
        if matches!(spec, ShapeSpec::Polygon(_)) {
            return Err((CgdgStatus::InvalidArgument, "use cgdg_shape_polygon for polygons".into()));
        }
        let shape = lift(spec.build())?;
        *out = Box::into_raw(Box::new(CgdgShape { spec: Some(spec), shape }));
        Ok(())
    })
}

/// Convex polygon from `k` interleaved counterclockwise vertices and an interior origin.
///
/// # Safety
/// `xy` must point to `2 * k` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cgdg_shape_polygon(
    xy: *const f64,
    k: usize,
    origin_x: f64,
    origin_y: f64,
    out: *mut *mut CgdgShape,
) -> CgdgStatus {
    guard(|| {
        if xy.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let vs = std::slice::from_raw_parts(xy, 2 * k).chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect();
        let shape = lift(ConvexShape::new(vs, Point::new(origin_x, origin_y)))?;
        *out = Box::into_raw(Box::new(CgdgShape { spec: None, shape: Arc::new(shape) }));
        Ok(())
    })
}

/// # Safety
/// `shape` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cgdg_shape_free(shape: *mut CgdgShape) {
    if !shape.is_null() {
        drop(Box::from_raw(shape));
    }
}

/// Shape constants searched with `resolution` boundary samples (64 is a good default).
///
/// # Safety
/// `shape` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cgdg_shape_constants(
    shape: *const CgdgShape,
    resolution: usize,
    out: *mut CgdgConstants,
) -> CgdgStatus {
    guard(|| {
        let (Some(s), false) = (shape.as_ref(), out.is_null()) else {
            return Err(null("argument"));
        };
        let c = lift(shape_constants(&s.shape, resolution))?;
        *out = CgdgConstants {
            alpha: c.alpha,
            kappa: c.kappa,
            center_x: c.center_o.x,
            center_y: c.center_o.y,
            bound_triangulation: c.bound_t_triangulation,
            bound_general: c.bound_t_general,
        };
        Ok(())
    })
}

/// Build the graph of `inst` under `shape`. With `lenient` non-zero,
/// degenerate pairs are dropped instead of failing the build.
///
/// # Safety
/// `inst` and `shape` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cgdg_graph_build(
    inst: *const CgdgInstance,
    shape: *const CgdgShape,
    lenient: i32,
    out: *mut *mut CgdgGraph,
) -> CgdgStatus {
    guard(|| {
        let (Some(i), Some(s), false) = (inst.as_ref(), shape.as_ref(), out.is_null()) else {
            return Err(null("argument"));
        };
        let policy = if lenient != 0 { GeneralPositionPolicy::Lenient } else { GeneralPositionPolicy::Strict };
        let g = match &s.spec {
            Some(spec) => build_for_spec(spec, &s.shape, &i.0, policy),
            None => build_cgdg_with(&i.0, &s.shape, BuildOptions { policy, force_constraints: false }),
        };
        *out = Box::into_raw(Box::new(CgdgGraph(lift(g)?)));
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cgdg_graph_free(graph: *mut CgdgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cgdg_graph_edge_count(graph: *const CgdgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edges.len())
}

/// Copy the edges as `u, v` index pairs into `buf`, which holds `capacity`
/// pairs. `written` receives the number of edges, even when the buffer is too small.
///
/// # Safety
/// `buf` must point to `2 * capacity` writable indices and `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cgdg_graph_edges(
    graph: *const CgdgGraph,
    buf: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> CgdgStatus {
    guard(|| {
        let (Some(g), false) = (graph.as_ref(), written.is_null()) else {
            return Err(null("argument"));
        };
        let edges = &g.0.edges;
        *written = edges.len();
        if capacity < edges.len() {
            return Err((CgdgStatus::BufferTooSmall, format!("{} edges, room for {capacity}", edges.len())));
        }
        if buf.is_null() && !edges.is_empty() {
            return Err(null("buf"));
        }
        for (k, e) in edges.iter().enumerate() {
            *buf.add(2 * k) = e.u;
            *buf.add(2 * k + 1) = e.v;
        }
        Ok(())
    })
}

/// 1 if `uv` is an edge, 0 otherwise (including out-of-range indices).
///
/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cgdg_graph_has_edge(graph: *const CgdgGraph, u: usize, v: usize) -> i32 {
    graph.as_ref().map_or(0, |g| i32::from(g.0.has_edge(u, v)))
}

/// Largest ratio of graph distance to visibility-graph distance.
/// A disconnected visible pair makes the ratio infinite.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cgdg_graph_max_stretch(graph: *const CgdgGraph, out: *mut f64) -> CgdgStatus {
    guard(|| {
        let (Some(g), false) = (graph.as_ref(), out.is_null()) else {
            return Err(null("argument"));
        };
        let r = stretch_with_bound(&g.0, f64::INFINITY, false);
        *out = if r.disconnected_pair.is_some() { f64::INFINITY } else { r.max_ratio };
        Ok(())
    })
}
