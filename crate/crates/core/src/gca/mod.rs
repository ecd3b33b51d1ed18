//! Semifree graded-commutative algebras over the rationals.
//!
//! Generators live in nonpositive degrees; odd generators anticommute and
//! square to zero. Each generator carries a weight used to cut every graded
//! piece down to a finite window.

mod algebra;
mod element;
mod map;
mod monomial;

pub use algebra::{GeneratorDecl, SemifreeAlgebra};
pub use element::Element;
pub use map::AlgebraMap;
pub use monomial::{GenId, Monomial};
