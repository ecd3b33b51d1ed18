use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::module::{cotangent_module, DiagramModule};
use crate::diagram::{CellId, Resolvent, TargetDiagram};
use crate::error::{Error, Result};
use crate::gca::{AlgebraMap, Element, GenId, Monomial};
use crate::rational::Q;
use crate::tangent::tangent_cohomology;
use crate::window::{cohomology, differential_rows, Chain, TruncationWindow, WindowedComplex};

/// Restrictions `S_{cell(g)} → S_{cell(h)}` for every pair of generator
/// cells that occur, keyed by `(from, to)`.
fn restriction_table(s: &TargetDiagram, cells: &[CellId]) -> BTreeMap<(CellId, CellId), AlgebraMap> {
    let nerve = s.nerve();
    let mut out = BTreeMap::new();
    for &a in cells {
        for &b in cells {
            if nerve.leq(a, b) {
                out.entry((a, b)).or_insert_with(|| s.restriction(a, b));
            }
        }
    }
    out
}

fn slot_basis(s: &TargetDiagram, slots: &[(GenId, i32, CellId)], i: i32, max_weight: u32) -> Vec<(GenId, Monomial)> {
    let mut out = Vec::new();
    for &(g, deg, cell) in slots {
        if deg + i == 0 {
            out.extend(s.chart(cell).slice(max_weight).into_iter().map(|m| (g, m)));
        }
    }
    out
}

fn slot_relations(s: &TargetDiagram, slots: &[(GenId, i32, CellId)], i: i32, max_weight: u32) -> Vec<Chain<(GenId, Monomial)>> {
    let mut out = Vec::new();
    for &(g, deg, cell) in slots {
        if deg + i == 0 {
            out.extend(
                s.chart(cell).ideal_span(max_weight).into_iter().map(|e| e.terms().map(|(m, q)| ((g, m.clone()), q.clone())).collect()),
            );
        }
    }
    out
}

/// `Hom*_{S•}(𝓛_R, S•)`: a cochain assigns to each symbol `dg` a value in
/// `S_{cell(g)}`, so degree `i` only sees symbols of degree `−i`. The
/// differential is `(Dφ)(dh) = −(−1)^i φ(∂ dh)`.
pub struct HomComplex<'a> {
    module: &'a DiagramModule,
    slots: Vec<(GenId, i32, CellId)>,
    /// symbols whose fiber differential at their own cell mentions `g`
    users: BTreeMap<GenId, Vec<(GenId, Element)>>,
    restrictions: BTreeMap<(CellId, CellId), AlgebraMap>,
}

impl<'a> HomComplex<'a> {
    pub fn new(module: &'a DiagramModule) -> HomComplex<'a> {
        let slots: Vec<(GenId, i32, CellId)> =
            (0..module.generators.len() as GenId).map(|g| (g, module.symbol_degree(g), module.symbol_cell(g))).collect();
        let mut users: BTreeMap<GenId, Vec<(GenId, Element)>> = BTreeMap::new();
        for &(h, _, cell) in &slots {
            for (g, c) in module.fiber(cell).differential_of(h) {
                users.entry(*g).or_default().push((h, c.clone()));
            }
        }
        let cells: Vec<CellId> = (0..module.target.nerve().len()).collect();
        let restrictions = restriction_table(&module.target, &cells);
        HomComplex { module, slots, users, restrictions }
    }
}

impl WindowedComplex for HomComplex<'_> {
    type Coord = (GenId, Monomial);

    fn weight(&self, c: &(GenId, Monomial)) -> u32 {
        c.1.weight()
    }

    fn basis(&self, i: i32, max_weight: u32) -> Vec<(GenId, Monomial)> {
        slot_basis(&self.module.target, &self.slots, i, max_weight)
    }

    fn structurally_empty(&self, i: i32) -> bool {
        self.slots.iter().all(|s| s.1 + i != 0)
    }

    fn differential(&self, i: i32, c: &(GenId, Monomial)) -> Vec<((GenId, Monomial), Q)> {
        let (g, m) = c;
        let sign = if i % 2 == 0 { -Q::one() } else { Q::one() };
        let from = self.module.symbol_cell(*g);
        let mut out = Vec::new();
        for (h, coef) in self.users.get(g).map_or(&[][..], Vec::as_slice) {
            let to = self.module.symbol_cell(*h);
            let value = self.restrictions[&(from, to)].apply_monomial(m).mul(coef);
            out.extend(value.terms().map(|(t, q)| ((*h, t.clone()), &sign * q)));
        }
        out
    }

    fn relations(&self, i: i32, max_weight: u32) -> Vec<Chain<(GenId, Monomial)>> {
        slot_relations(&self.module.target, &self.slots, i, max_weight)
    }
}

/// `Der*(R, S•)`: derivations along the augmentation, stored by their
/// values on generators. The differential `(Dθ)(h) = −(−1)^i θ(dh)` extends
/// `θ` through the Leibniz rule with untouched factors pushed by `p`.
pub struct DerTargetComplex<'a> {
    r: &'a Resolvent,
    s: &'a TargetDiagram,
    slots: Vec<(GenId, i32, CellId)>,
    augmentations: Vec<AlgebraMap>,
    restrictions: BTreeMap<(CellId, CellId), AlgebraMap>,
    dependents: Vec<Vec<GenId>>,
}

impl<'a> DerTargetComplex<'a> {
    pub fn new(r: &'a Resolvent, s: &'a TargetDiagram) -> DerTargetComplex<'a> {
        let alg = r.algebra();
        let slots: Vec<(GenId, i32, CellId)> = (0..alg.len() as GenId).map(|g| (g, alg.generator(g).degree, r.cell_of(g))).collect();
        let n = r.nerve().len();
        let augmentations = (0..n).map(|a| r.augmentation_at(s, a)).collect();
        let cells: Vec<CellId> = (0..n).collect();
        let restrictions = restriction_table(s, &cells);
        let mut dependents = vec![Vec::new(); alg.len()];
        for h in 0..alg.len() as GenId {
            let mut seen: Vec<GenId> = alg.differential_of(h).terms().flat_map(|(m, _)| m.generators().collect::<Vec<_>>()).collect();
            seen.sort_unstable();
            seen.dedup();
            for g in seen {
                dependents[g as usize].push(h);
            }
        }
        DerTargetComplex { r, s, slots, augmentations, restrictions, dependents }
    }
}

impl WindowedComplex for DerTargetComplex<'_> {
    type Coord = (GenId, Monomial);

    fn weight(&self, c: &(GenId, Monomial)) -> u32 {
        c.1.weight()
    }

    fn basis(&self, i: i32, max_weight: u32) -> Vec<(GenId, Monomial)> {
        slot_basis(self.s, &self.slots, i, max_weight)
    }

    fn structurally_empty(&self, i: i32) -> bool {
        self.slots.iter().all(|s| s.1 + i != 0)
    }

    fn differential(&self, i: i32, c: &(GenId, Monomial)) -> Vec<((GenId, Monomial), Q)> {
        let (g, m) = c;
        let alg = self.r.algebra();
        let sign = if i % 2 == 0 { -Q::one() } else { Q::one() };
        let from = self.r.cell_of(*g);
        let mut out = Vec::new();
        for &h in &self.dependents[*g as usize] {
            let to = self.r.cell_of(h);
            let mut theta = vec![Element::zero(); *g as usize + 1];
            theta[*g as usize] = self.restrictions[&(from, to)].apply_monomial(m);
            let p = &self.augmentations[to];
            let value = alg.derive_along(alg.differential_of(h), i, &theta, &|x: &Monomial| p.apply_monomial(x));
            out.extend(value.terms().map(|(t, q)| ((h, t.clone()), &sign * q)));
        }
        out
    }

    fn relations(&self, i: i32, max_weight: u32) -> Vec<Chain<(GenId, Monomial)>> {
        slot_relations(self.s, &self.slots, i, max_weight)
    }
}

/// Hom complex of the cotangent module into the chart diagram.
pub fn hom_complex(l: &DiagramModule) -> HomComplex<'_> {
    HomComplex::new(l)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DictionaryDegree {
    pub degree: i32,
    pub hom_basis: usize,
    pub der_basis: usize,
    /// the two differential matrices agree entry by entry after `dg ↔ g`
    pub intertwines: bool,
}

/// Compares `Hom^i(𝓛_R, S•)` with `Der^i(R, S•)` under `dg ↔ g`: equal
/// bases and identical differential matrices.
pub fn dictionary_check(hom: &HomComplex<'_>, der: &DerTargetComplex<'_>, i: i32, max_weight: u32) -> DictionaryDegree {
    let (hb, hrows) = differential_rows(hom, i, max_weight);
    let (db, drows) = differential_rows(der, i, max_weight);
    let normalize = |rows: Vec<Chain<(GenId, Monomial)>>| -> Vec<BTreeMap<(GenId, Monomial), Q>> {
        rows.into_iter()
            .map(|r| {
                let mut acc: BTreeMap<(GenId, Monomial), Q> = BTreeMap::new();
                for (c, q) in r {
                    let e = acc.entry(c).or_insert_with(Q::zero);
                    *e = &*e + &q;
                }
                acc.retain(|_, q| !q.is_zero());
                acc
            })
            .collect()
    };
    let intertwines = hb == db && normalize(hrows) == normalize(drows);
    DictionaryDegree { degree: i, hom_basis: hb.len(), der_basis: db.len(), intertwines }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComparisonDegree {
    pub degree: i32,
    /// `H^i(Der(R, R))`
    pub tangent: usize,
    pub tangent_stable: bool,
    /// `H^i(Hom(𝓛_R, S•))`
    pub hom: usize,
    pub hom_stable: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub window: TruncationWindow,
    pub degrees: Vec<ComparisonDegree>,
    pub dictionary: Vec<DictionaryDegree>,
    pub passed: bool,
}

fn dim_or_zero<T>(r: Result<T>, f: impl Fn(&T) -> (usize, bool)) -> Result<(usize, bool)> {
    match r {
        Ok(h) => Ok(f(&h)),
        Err(Error::WindowTooSmall { .. }) => Ok((0, true)),
        Err(e) => Err(e),
    }
}

/// Windowed `H^i(Der(R, R))` against `H^i(Hom(𝓛_R, S•))` over the window's
/// range, plus the basis dictionary between `Hom` and `Der(R, S•)`.
pub fn compare_tangent(r: &Resolvent, s: &TargetDiagram, window: &TruncationWindow) -> Result<ComparisonReport> {
    let l = cotangent_module(r, s);
    let hom = HomComplex::new(&l);
    let der = DerTargetComplex::new(r, s);
    let degrees: Vec<i32> = window.range().collect();
    let degrees = degrees
        .par_iter()
        .map(|&i| {
            let (t, ts) = dim_or_zero(tangent_cohomology(r, i, window), |h| (h.dim, h.stable))?;
            let (h, hs) = dim_or_zero(cohomology(&hom, i, window), |h| (h.dim, h.stable))?;
            Ok(ComparisonDegree { degree: i, tangent: t, tangent_stable: ts, hom: h, hom_stable: hs, agree: t == h })
        })
        .collect::<Result<Vec<_>>>()?;
    let dictionary: Vec<DictionaryDegree> = window.range().map(|i| dictionary_check(&hom, &der, i, window.weight)).collect();
    let passed = degrees.iter().all(|d| d.agree && d.tangent_stable && d.hom_stable) && dictionary.iter().all(|d| d.intertwines);
    Ok(ComparisonReport { window: *window, degrees, dictionary, passed })
}
