//! Input formats: the polynomial syntax and the JSON descriptions of
//! schemes, resolvents and morphisms.

mod morphism;
mod poly;
mod resolvent;
mod scheme;

pub use morphism::{parse_morphism, ComparisonSpec, MorphismSpec};
pub use poly::{parse_polynomial, PolyError, PolyErrorKind};
pub use resolvent::{parse_resolvent, GeneratorSpec, ResolventCellSpec, ResolventFile, ResolventSpec};
pub use scheme::{parse_scheme, ChartSpec, IntersectionSpec, SchemeSpec};
