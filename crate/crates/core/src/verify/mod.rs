//! Property checks over constructed graphs and the geometric lemmas behind
//! their spanning bounds.

mod checks;
pub mod faces;
mod lemmas;
pub mod oracle;
pub mod paths;

use serde::Serialize;
use serde_json::Value;

pub use checks::{
    check_diamond, check_planarity, check_planarity_edges, check_rect_bound, check_visible_pair,
    measure_stretch, qualifying_pairs, stretch_with_bound, PairRatio, StretchReport,
};
pub use lemmas::{
    check_boundary_summation, check_half_empty, check_homothet_intersection,
    summing_rectangles_identity, upper_arc_length, HALF_EMPTY_GRID,
};
pub use oracle::{compare_with_grid, OracleComparison};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The check's hypothesis does not hold, so nothing was verified.
    HypothesisNotMet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub property: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn pass(property: &str) -> Self {
        Verdict {
            property: property.into(),
            status: Status::Pass,
            counterexample: None,
            note: None,
        }
    }

    pub fn fail(property: &str, counterexample: Value) -> Self {
        Verdict {
            property: property.into(),
            status: Status::Fail,
            counterexample: Some(counterexample),
            note: None,
        }
    }

    pub fn not_met(property: &str, note: impl Into<String>) -> Self {
        Verdict {
            property: property.into(),
            status: Status::HypothesisNotMet,
            counterexample: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}
