//! Computer algebra for resolvents of diagrams of commutative algebras:
//! exact linear algebra, semifree graded-commutative algebras, Reedy
//! resolvents over nerves of affine covers, tangent and cotangent cohomology
//! in finite weight windows, Maurer-Cartan deformations and morphisms.

pub mod cotangent;
pub mod diagram;
pub mod error;
pub mod exactla;
pub mod gca;
pub mod morphisms;
pub mod parse;
pub mod rational;
pub mod tangent;
pub mod window;

pub use error::{Error, Result};
pub use rational::Q;
