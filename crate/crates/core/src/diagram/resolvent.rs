use std::collections::BTreeMap;

use super::nerve::{CellId, Nerve};
use super::target::TargetDiagram;
use crate::error::{Error, Result};
use crate::gca::{AlgebraMap, Element, GenId, SemifreeAlgebra};

/// Cellwise generator data over a nerve with augmentations to the chart
/// diagram.
///
/// All generators live in one total algebra; generator `g` belongs to
/// `R_α` exactly when its cell is `<= α`. Generators are ordered by cell,
/// so differentials only reach earlier cells.
#[derive(Clone, Debug)]
pub struct Resolvent {
    nerve: Nerve,
    algebra: SemifreeAlgebra,
    /// image of each generator in the chart of its own cell
    augmentation: Vec<Element>,
}

impl Resolvent {
    pub fn new(nerve: Nerve) -> Resolvent {
        Resolvent { nerve, algebra: SemifreeAlgebra::new(), augmentation: Vec::new() }
    }

    /// Adjoins a generator at `cell`. Cells must be filled in nerve order.
    pub fn add_generator(&mut self, name: &str, degree: i32, cell: CellId, d: Element, aug: Element) -> Result<GenId> {
        if let Some(last) = self.algebra.generators().last() {
            if last.cell > cell {
                return Err(Error::Validation(format!(
                    "generator `{name}` at {} added after cell {}",
                    self.nerve.display(cell),
                    self.nerve.display(last.cell)
                )));
            }
        }
        for (m, _) in d.terms() {
            if let Some(g) = m.generators().find(|&g| !self.nerve.leq(self.algebra.generator(g).cell, cell)) {
                return Err(Error::Validation(format!(
                    "differential of `{name}` uses `{}` from a cell not below {}",
                    self.algebra.generator(g).name,
                    self.nerve.display(cell)
                )));
            }
        }
        let id = self.algebra.add_generator(name, degree, cell, d)?;
        self.augmentation.push(aug);
        Ok(id)
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn algebra(&self) -> &SemifreeAlgebra {
        &self.algebra
    }

    pub fn own_augmentation(&self, g: GenId) -> &Element {
        &self.augmentation[g as usize]
    }

    pub fn cell_of(&self, g: GenId) -> CellId {
        self.algebra.generator(g).cell
    }

    /// Generators attached exactly at `cell`.
    pub fn generators_at(&self, cell: CellId) -> Vec<GenId> {
        (0..self.algebra.len() as GenId).filter(|&g| self.cell_of(g) == cell).collect()
    }

    /// Generators of `R_α`.
    pub fn generators_upto(&self, alpha: CellId) -> Vec<GenId> {
        (0..self.algebra.len() as GenId).filter(|&g| self.nerve.leq(self.cell_of(g), alpha)).collect()
    }

    /// Generators of the latching algebra at `α`.
    pub fn latching_generators(&self, alpha: CellId) -> Vec<GenId> {
        (0..self.algebra.len() as GenId)
            .filter(|&g| self.cell_of(g) != alpha && self.nerve.leq(self.cell_of(g), alpha))
            .collect()
    }

    /// The augmentation `p_α` on the total algebra; generators outside
    /// `R_α` map to zero.
    pub fn augmentation_at(&self, s: &TargetDiagram, alpha: CellId) -> AlgebraMap {
        let mut restr: BTreeMap<CellId, AlgebraMap> = BTreeMap::new();
        let images = (0..self.algebra.len() as GenId)
            .map(|g| {
                let c = self.cell_of(g);
                if !self.nerve.leq(c, alpha) {
                    return Element::zero();
                }
                let f = restr.entry(c).or_insert_with(|| s.restriction(c, alpha));
                f.apply(&self.augmentation[g as usize])
            })
            .collect();
        AlgebraMap::new(images)
    }

    /// Number of generators per (cell, degree).
    pub fn counts(&self) -> BTreeMap<(CellId, i32), usize> {
        let mut out = BTreeMap::new();
        for g in self.algebra.generators() {
            *out.entry((g.cell, g.degree)).or_insert(0) += 1;
        }
        out
    }
}

/// The free algebra on the generators of cells strictly below `α`, with the
/// restricted differential, as a standalone algebra.
pub fn latching_algebra(r: &Resolvent, alpha: CellId) -> SemifreeAlgebra {
    let keep = r.latching_generators(alpha);
    let total = r.algebra();
    let mut out = SemifreeAlgebra::new();
    let mut images = vec![Element::zero(); total.len()];
    for &g in &keep {
        let decl = total.generator(g);
        let d = AlgebraMap::new(images.clone()).apply(total.differential_of(g));
        let id = out.add_generator(&decl.name, decl.degree, decl.cell, d).expect("sub-algebra of a valid algebra");
        images[g as usize] = out.var(id);
    }
    out
}
