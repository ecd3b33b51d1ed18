use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{CellId, Membership, Resolvent, TargetDiagram};
use crate::gca::{AlgebraMap, Element, GenId, GeneratorDecl, Monomial};

/// `Ω_{R_α} ⊗ S_α`: the free `S_α`-module on symbols `dg` for the
/// generators of `R_α`, with the induced differential.
#[derive(Clone, Debug)]
pub struct KaehlerFiber {
    pub cell: CellId,
    pub symbols: Vec<GenId>,
    /// `∂(dh) = Σ c_g dg` with `c_g` in the chart algebra of the cell
    pub differential: BTreeMap<GenId, Vec<(GenId, Element)>>,
}

impl KaehlerFiber {
    pub fn rank(&self) -> usize {
        self.symbols.len()
    }

    pub fn differential_of(&self, h: GenId) -> &[(GenId, Element)] {
        self.differential.get(&h).map_or(&[], Vec::as_slice)
    }
}

/// Coefficient of `dg` in the universal derivation of `a`, pushed to the
/// chart by `p`.
pub(crate) fn partial(r: &Resolvent, p: &AlgebraMap, a: &Element, g: GenId) -> Element {
    let alg = r.algebra();
    let mut theta = vec![Element::zero(); g as usize + 1];
    theta[g as usize] = Element::one();
    alg.derive_along(a, -alg.generator(g).degree, &theta, &|m: &Monomial| p.apply_monomial(m))
}

/// The fiber of the cotangent module at `α`. The differential of `dh` is
/// the universal derivation of `d(h)` with coefficients pushed through
/// `p_α`; only factors of degree 0 survive the push, so no signs arise.
pub fn kaehler_fiber(r: &Resolvent, s: &TargetDiagram, alpha: CellId) -> KaehlerFiber {
    let p = r.augmentation_at(s, alpha);
    let symbols = r.generators_upto(alpha);
    let alg = r.algebra();
    let mut differential = BTreeMap::new();
    for &h in &symbols {
        let dh = alg.differential_of(h);
        let mut support: Vec<GenId> = dh.terms().flat_map(|(m, _)| m.generators().collect::<Vec<_>>()).collect();
        support.sort_unstable();
        support.dedup();
        let terms: Vec<(GenId, Element)> =
            support.into_iter().map(|g| (g, partial(r, &p, dh, g))).filter(|(_, c)| !c.is_zero()).collect();
        if !terms.is_empty() {
            differential.insert(h, terms);
        }
    }
    KaehlerFiber { cell: alpha, symbols, differential }
}

/// The cotangent complex of a resolvent as a diagram of modules over the
/// chart diagram. Transitions send `dg` to `dg`.
#[derive(Clone, Debug)]
pub struct DiagramModule {
    pub target: TargetDiagram,
    pub generators: Vec<GeneratorDecl>,
    pub fibers: Vec<KaehlerFiber>,
}

pub fn cotangent_module(r: &Resolvent, s: &TargetDiagram) -> DiagramModule {
    let fibers = (0..r.nerve().len()).into_par_iter().map(|a| kaehler_fiber(r, s, a)).collect();
    DiagramModule { target: s.clone(), generators: r.algebra().generators().to_vec(), fibers }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ModuleIssue {
    pub cell: String,
    pub symbol: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleReport {
    pub ranks: BTreeMap<String, usize>,
    /// `∂²(dh)` vanishes in the chart algebra for every symbol
    pub d_squared: bool,
    /// transitions are chain maps after base change
    pub chain_maps: bool,
    /// `l_{δα} ∘ l_{γδ} = l_{γα}` along every chain
    pub cocycle: bool,
    pub issues: Vec<ModuleIssue>,
}

impl DiagramModule {
    pub fn fiber(&self, alpha: CellId) -> &KaehlerFiber {
        &self.fibers[alpha]
    }

    pub fn symbol_name(&self, g: GenId) -> String {
        format!("d{}", self.generators[g as usize].name)
    }

    pub fn symbol_degree(&self, g: GenId) -> i32 {
        self.generators[g as usize].degree
    }

    pub fn symbol_cell(&self, g: GenId) -> CellId {
        self.generators[g as usize].cell
    }

    /// Transition `l_{γα}` on symbols; `None` unless `γ <= α`.
    pub fn transition(&self, gamma: CellId, alpha: CellId) -> Option<Vec<(GenId, GenId)>> {
        let nerve = self.target.nerve();
        nerve.leq(gamma, alpha).then(|| self.fibers[gamma].symbols.iter().map(|&g| (g, g)).collect())
    }

    /// Checks `∂² = 0`, the chain-map property of base-changed transitions
    /// and the cocycle condition. Vanishing in a chart algebra is certified
    /// by windowed ideal membership with the given extra weight.
    pub fn check(&self, extra: u32) -> ModuleReport {
        let nerve = self.target.nerve();
        let mut issues = Vec::new();
        let mut d_squared = true;
        for f in &self.fibers {
            let chart = self.target.chart(f.cell);
            for &h in &f.symbols {
                let mut acc: BTreeMap<GenId, Element> = BTreeMap::new();
                for (g, c) in f.differential_of(h) {
                    for (k, c2) in f.differential_of(*g) {
                        acc.entry(*k).or_default().add_scaled(&crate::Q::one(), &c.mul(c2));
                    }
                }
                for (k, v) in acc {
                    if chart.membership(&v, extra) != Membership::Member {
                        d_squared = false;
                        issues.push(ModuleIssue {
                            cell: nerve.display(f.cell),
                            symbol: self.symbol_name(h),
                            detail: format!("∂² has coefficient {} on {}", chart.algebra().format(&v), self.symbol_name(k)),
                        });
                    }
                }
            }
        }
        let mut chain_maps = true;
        let mut cocycle = true;
        for alpha in 0..nerve.len() {
            for gamma in nerve.below(alpha) {
                if gamma == alpha {
                    continue;
                }
                let restr = self.target.restriction(gamma, alpha);
                let chart = self.target.chart(alpha);
                for &h in &self.fibers[gamma].symbols {
                    let base: BTreeMap<GenId, Element> =
                        self.fibers[gamma].differential_of(h).iter().map(|(g, c)| (*g, restr.apply(c))).collect();
                    let here: BTreeMap<GenId, Element> = self.fibers[alpha].differential_of(h).iter().cloned().collect();
                    let mut keys: Vec<GenId> = base.keys().chain(here.keys()).copied().collect();
                    keys.sort_unstable();
                    keys.dedup();
                    for k in keys {
                        let a = base.get(&k).cloned().unwrap_or_default();
                        let b = here.get(&k).cloned().unwrap_or_default();
                        if chart.membership(&a.sub(&b), extra) != Membership::Member {
                            chain_maps = false;
                            issues.push(ModuleIssue {
                                cell: format!("{} -> {}", nerve.display(gamma), nerve.display(alpha)),
                                symbol: self.symbol_name(h),
                                detail: format!("transition does not commute with ∂ on {}", self.symbol_name(k)),
                            });
                        }
                    }
                }
                for delta in nerve.below(alpha) {
                    if delta == alpha || delta == gamma || !nerve.leq(gamma, delta) {
                        continue;
                    }
                    let first = self.transition(gamma, delta).expect("γ <= δ");
                    let second: BTreeMap<GenId, GenId> = self.transition(delta, alpha).expect("δ <= α").into_iter().collect();
                    let composite: Vec<(GenId, GenId)> = first.iter().map(|(a, b)| (*a, second[b])).collect();
                    if Some(composite) != self.transition(gamma, alpha) {
                        cocycle = false;
                        issues.push(ModuleIssue {
                            cell: format!("{} -> {} -> {}", nerve.display(gamma), nerve.display(delta), nerve.display(alpha)),
                            symbol: String::new(),
                            detail: "cocycle condition fails".into(),
                        });
                    }
                }
            }
        }
        let ranks = self.fibers.iter().map(|f| (nerve.display(f.cell), f.rank())).collect();
        ModuleReport { ranks, d_squared, chain_maps, cocycle, issues }
    }
}
