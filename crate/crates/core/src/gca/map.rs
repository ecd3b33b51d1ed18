use std::collections::HashMap;

use super::algebra::SemifreeAlgebra;
use super::element::Element;
use super::monomial::{GenId, Monomial};

/// A graded algebra map out of a free algebra, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    images: Vec<Element>,
}

impl AlgebraMap {
    pub fn new(images: Vec<Element>) -> AlgebraMap {
        AlgebraMap { images }
    }

    pub fn identity(a: &SemifreeAlgebra) -> AlgebraMap {
        AlgebraMap { images: (0..a.len() as GenId).map(|g| a.var(g)).collect() }
    }

    pub fn image(&self, g: GenId) -> &Element {
        &self.images[g as usize]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let mut out = Element::one();
        for (g, e, _) in m.factors() {
            out = out.mul(&self.images[g as usize].pow(e));
            if out.is_zero() {
                break;
            }
        }
        out
    }

    pub fn apply(&self, a: &Element) -> Element {
        let mut cache: HashMap<&Monomial, Element> = HashMap::new();
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let img = cache.entry(m).or_insert_with(|| self.apply_monomial(m));
            out.add_scaled(c, img);
        }
        out
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &AlgebraMap) -> AlgebraMap {
        AlgebraMap { images: self.images.iter().map(|e| then.apply(e)).collect() }
    }

    /// Source generators where `f d = d f` fails, with the defect.
    pub fn chain_map_defects(&self, source: &SemifreeAlgebra, target: &SemifreeAlgebra) -> Vec<(GenId, Element)> {
        (0..source.len() as GenId)
            .filter_map(|g| {
                let lhs = self.apply(source.differential_of(g));
                let rhs = target.apply_differential(&self.images[g as usize]);
                let defect = lhs.sub(&rhs);
                (!defect.is_zero()).then_some((g, defect))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Q;

    #[test]
    fn substitution_and_composition() {
        let mut a = SemifreeAlgebra::new();
        let x = a.add_generator("x", 0, 0, Element::zero()).unwrap();
        let y = a.add_generator("y", 0, 0, Element::zero()).unwrap();
        let f = AlgebraMap::new(vec![a.var(x).add(&a.var(y)), a.var(y)]);
        let p = a.var(x).pow(2);
        assert_eq!(a.format(&f.apply(&p)), "x^2 + 2*x*y + y^2");
        let g = AlgebraMap::new(vec![a.var(x), Element::constant(Q::one())]);
        assert_eq!(a.format(&f.compose(&g).apply(&p)), "x^2 + 2*x + 1");
        assert!(AlgebraMap::identity(&a).chain_map_defects(&a, &a).is_empty());
    }
}
