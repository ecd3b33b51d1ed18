//! Deformations of a morphism through the two-row diagram of resolvents:
//! the short exact sequence of derivation complexes and the Euler relation
//! of its long exact sequence.

mod diagram;
mod sequence;

pub use diagram::{build_morphism_resolvent, ComparisonIssue, MorphismBuild, MorphismData, MorphismDiagram};
pub use sequence::{
    morphism_derivation_complexes, morphism_tangent, morphism_tangent_report, sequence_check, sigma, tau, MorphismComplexes,
    MorphismDegree, MorphismTangentReport, SequenceDegree, SequenceReport,
};
