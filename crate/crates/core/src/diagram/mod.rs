//! Nerves of affine covers, chart diagrams over them, and resolvents built
//! and verified by induction on cell degree.

mod build;
mod check;
mod homology;
mod nerve;
mod resolvent;
mod target;

pub use build::{build_resolvent, resolve_cell, tate_extend, BuildOutcome, TATE_STEP_LIMIT};
pub use check::{check_resolvent, CellCheck, HomologyEntry, ResolventCheck};
pub use homology::{homology, homology_dimension, AlgebraComplex};
pub(crate) use homology::reachable_degrees;
pub use nerve::{CellId, Nerve};
pub use resolvent::{latching_algebra, Resolvent};
pub use target::{ChartPresentation, DiagramIssue, Membership, TargetDiagram, ValidationReport};
