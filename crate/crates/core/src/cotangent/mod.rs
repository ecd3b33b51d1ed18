//! The cotangent complex of a resolvent as a diagram of modules over the
//! chart diagram: Kähler fibers, quasi-coherence through transition cones,
//! and the comparison of `Hom(𝓛_R, S•)` with tangent cohomology.

mod cone;
mod hom;
mod module;

pub use cone::{qcoh_all, qcoh_check, ConeDegree, ConePart, QcohReport, TransitionCone};
pub use hom::{
    compare_tangent, dictionary_check, hom_complex, ComparisonDegree, ComparisonReport, DerTargetComplex, DictionaryDegree, HomComplex,
};
pub use module::{cotangent_module, kaehler_fiber, DiagramModule, KaehlerFiber, ModuleIssue, ModuleReport};
