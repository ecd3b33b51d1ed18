use std::collections::BTreeSet;

use super::target::ChartPresentation;
use crate::error::Result;
use crate::gca::{AlgebraMap, Element, GenId, Monomial, SemifreeAlgebra};
use crate::rational::Q;
use crate::window::{cohomology, Cohomology, TruncationWindow, WindowedComplex};

/// Degrees in `[floor, 0]` attained by monomials in generators of the given
/// degrees (odd generators used at most once).
pub(crate) fn reachable_degrees(degrees: &[(i32, bool)], floor: i32) -> BTreeSet<i32> {
    let mut reach: BTreeSet<i32> = BTreeSet::from([0]);
    for &(d, odd) in degrees {
        if d == 0 {
            continue;
        }
        let mut next = reach.clone();
        for &r in &reach {
            let mut k = r + d;
            while k >= floor {
                next.insert(k);
                if odd {
                    break;
                }
                k += d;
            }
        }
        reach = next;
    }
    reach
}

/// The subalgebra on `gens` as a complex in degrees `<= 0`, optionally
/// augmented by `p` onto a presented chart placed in degree 1.
pub struct AlgebraComplex<'a> {
    alg: &'a SemifreeAlgebra,
    gens: Vec<GenId>,
    augmentation: Option<(&'a ChartPresentation, &'a AlgebraMap)>,
}

impl<'a> AlgebraComplex<'a> {
    pub fn new(alg: &'a SemifreeAlgebra, gens: Vec<GenId>) -> AlgebraComplex<'a> {
        AlgebraComplex { alg, gens, augmentation: None }
    }

    pub fn augmented(alg: &'a SemifreeAlgebra, gens: Vec<GenId>, target: &'a ChartPresentation, p: &'a AlgebraMap) -> AlgebraComplex<'a> {
        AlgebraComplex { alg, gens, augmentation: Some((target, p)) }
    }

    pub fn algebra(&self) -> &SemifreeAlgebra {
        self.alg
    }

    /// Element spanned by a chain of degree `<= 0`.
    pub fn element(&self, chain: &[(Monomial, Q)]) -> Element {
        chain.iter().cloned().collect()
    }
}

fn element_chain(e: Element) -> Vec<(Monomial, Q)> {
    e.terms().map(|(m, q)| (m.clone(), q.clone())).collect()
}

impl WindowedComplex for AlgebraComplex<'_> {
    type Coord = Monomial;

    fn weight(&self, c: &Monomial) -> u32 {
        c.weight()
    }

    fn basis(&self, i: i32, max_weight: u32) -> Vec<Monomial> {
        match (i, self.augmentation) {
            (1, Some((s, _))) => s.slice(max_weight),
            (i, _) if i <= 0 => self.alg.slice(&self.gens, i, max_weight),
            _ => Vec::new(),
        }
    }

    fn structurally_empty(&self, i: i32) -> bool {
        match i {
            1 => self.augmentation.is_none(),
            i if i > 1 => true,
            i => {
                let degrees: Vec<(i32, bool)> = self
                    .gens
                    .iter()
                    .map(|&g| {
                        let d = self.alg.generator(g);
                        (d.degree, d.is_odd())
                    })
                    .collect();
                !reachable_degrees(&degrees, i).contains(&i)
            }
        }
    }

    fn differential(&self, i: i32, c: &Monomial) -> Vec<(Monomial, Q)> {
        match (i, self.augmentation) {
            (0, Some((_, p))) => element_chain(p.apply_monomial(c)),
            (i, _) if i < 0 => element_chain(self.alg.apply_differential(&Element::from_monomial(c.clone()))),
            _ => Vec::new(),
        }
    }

    fn relations(&self, i: i32, max_weight: u32) -> Vec<Vec<(Monomial, Q)>> {
        match (i, self.augmentation) {
            (1, Some((s, _))) => s.ideal_span(max_weight).into_iter().map(element_chain).collect(),
            _ => Vec::new(),
        }
    }
}

/// Windowed `H^i` of an algebra (or of its augmented complex), with the
/// stability flag.
pub fn homology_dimension(cx: &AlgebraComplex<'_>, i: i32, window: &TruncationWindow) -> Result<(usize, bool)> {
    let h = cohomology(cx, i, window)?;
    Ok((h.dim, h.stable))
}

pub fn homology(cx: &AlgebraComplex<'_>, i: i32, window: &TruncationWindow) -> Result<Cohomology<Monomial>> {
    cohomology(cx, i, window)
}
