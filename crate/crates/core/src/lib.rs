//! Constrained generalized Delaunay graphs for convex distance functions.

// negated comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cgdg;
pub mod constants;
pub mod error;
pub mod generate;
pub mod geom;
pub mod io;
pub mod pencil;
pub mod report;
pub mod svg;
pub mod verify;
pub mod visibility;

pub use error::{Error, Result};
pub use geom::{ConvexShape, Homothet, Point};
pub use visibility::{Instance, VisibilityGraph};
