//! Diagram derivations of a resolvent as a DG Lie algebra: its windowed
//! cohomology (tangent cohomology), the Maurer–Cartan equation over Artin
//! coefficients, and gauge equivalence.

mod artin;
mod derivation;
mod mc;

pub use artin::{ArtinCoefficient, IdealVec};
pub use derivation::{
    der_differential, derivation_basis, derivation_cohomology, lie_bracket, tangent_cohomology, DegreeSummary, DerComplex,
    DiagramDerivation, TangentCohomology,
};
pub use mc::{
    first_order_classes, gauge_act, gauge_equivalent, gauge_equivalent_in, mc_extend, mc_extend_in, mc_residue, mc_residue_in,
    perturbed_diagram, tensor_bracket, tensor_differential, ArtinTensor, ExtensionOutcome, FirstOrderCount, GaugeDecision, MCElement,
    PerturbedAlgebra, PerturbedResolvent,
};
