use serde::Serialize;

use super::module::DiagramModule;
use crate::diagram::CellId;
use crate::error::{Error, Result};
use crate::gca::{AlgebraMap, Element, GenId, Monomial};
use crate::rational::Q;
use crate::window::{cohomology, TruncationWindow, WindowedComplex};

/// Which summand of the cone a coordinate lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConePart {
    /// `M = 𝓛_γ ⊗ S_α`, shifted down by one
    Source,
    /// `N = 𝓛_α`
    Target,
}

/// The mapping cone of `l_{γα}: 𝓛_γ ⊗_{S_γ} S_α → 𝓛_α` with
/// `cone^i = M^{i+1} ⊕ N^i` and differential `[[−d, 0], [f, d]]`.
///
/// Coefficients are monomials of the chart at `α`, taken modulo its
/// relation ideal.
pub struct TransitionCone<'a> {
    module: &'a DiagramModule,
    gamma: CellId,
    alpha: CellId,
    /// base change of the source differential to `S_α`
    source_diff: std::collections::BTreeMap<GenId, Vec<(GenId, Element)>>,
}

impl<'a> TransitionCone<'a> {
    pub fn new(module: &'a DiagramModule, gamma: CellId, alpha: CellId) -> Result<TransitionCone<'a>> {
        let nerve = module.target.nerve();
        if !nerve.leq(gamma, alpha) {
            return Err(Error::Validation(format!("{} is not contained in {}", nerve.display(gamma), nerve.display(alpha))));
        }
        let restr: AlgebraMap = module.target.restriction(gamma, alpha);
        let source_diff = module.fibers[gamma]
            .differential
            .iter()
            .map(|(h, terms)| (*h, terms.iter().map(|(g, c)| (*g, restr.apply(c))).collect()))
            .collect();
        Ok(TransitionCone { module, gamma, alpha, source_diff })
    }

    fn symbols(&self, part: ConePart) -> &[GenId] {
        match part {
            ConePart::Source => &self.module.fibers[self.gamma].symbols,
            ConePart::Target => &self.module.fibers[self.alpha].symbols,
        }
    }

    fn cone_degree(&self, part: ConePart, g: GenId) -> i32 {
        let d = self.module.symbol_degree(g);
        match part {
            ConePart::Source => d - 1,
            ConePart::Target => d,
        }
    }
}

const PARTS: [ConePart; 2] = [ConePart::Source, ConePart::Target];

impl WindowedComplex for TransitionCone<'_> {
    type Coord = (ConePart, GenId, Monomial);

    fn weight(&self, c: &Self::Coord) -> u32 {
        c.2.weight()
    }

    fn basis(&self, i: i32, max_weight: u32) -> Vec<Self::Coord> {
        let slice = self.module.target.chart(self.alpha).slice(max_weight);
        let mut out = Vec::new();
        for part in PARTS {
            for &g in self.symbols(part) {
                if self.cone_degree(part, g) == i {
                    out.extend(slice.iter().map(|m| (part, g, m.clone())));
                }
            }
        }
        out
    }

    fn structurally_empty(&self, i: i32) -> bool {
        PARTS.iter().all(|&p| self.symbols(p).iter().all(|&g| self.cone_degree(p, g) != i))
    }

    fn differential(&self, _i: i32, c: &Self::Coord) -> Vec<(Self::Coord, Q)> {
        let (part, h, m) = c;
        let mut out = Vec::new();
        let push = |out: &mut Vec<(Self::Coord, Q)>, part: ConePart, g: GenId, coef: &Element, sign: &Q| {
            let e = coef.mul_monomial_left(m, sign);
            out.extend(e.terms().map(|(t, q)| ((part, g, t.clone()), q.clone())));
        };
        match part {
            ConePart::Source => {
                for (g, coef) in self.source_diff.get(h).map_or(&[][..], Vec::as_slice) {
                    push(&mut out, ConePart::Source, *g, coef, &-Q::one());
                }
                // the transition sends dh to dh
                out.push(((ConePart::Target, *h, m.clone()), Q::one()));
            }
            ConePart::Target => {
                for (g, coef) in self.module.fibers[self.alpha].differential_of(*h) {
                    push(&mut out, ConePart::Target, *g, coef, &Q::one());
                }
            }
        }
        out
    }

    fn relations(&self, i: i32, max_weight: u32) -> Vec<Vec<(Self::Coord, Q)>> {
        let span = self.module.target.chart(self.alpha).ideal_span(max_weight);
        let mut out = Vec::new();
        for part in PARTS {
            for &g in self.symbols(part) {
                if self.cone_degree(part, g) == i {
                    out.extend(span.iter().map(|e| e.terms().map(|(t, q)| ((part, g, t.clone()), q.clone())).collect()));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConeDegree {
    pub degree: i32,
    pub dim: usize,
    pub stable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QcohReport {
    pub from: String,
    pub to: String,
    pub homology: Vec<ConeDegree>,
    /// every windowed cone homology group in the range vanishes
    pub quasi_isomorphism: bool,
}

/// Windowed homology of the cone of a transition map over the window's
/// degree range.
pub fn qcoh_check(l: &DiagramModule, gamma: CellId, alpha: CellId, window: &TruncationWindow) -> Result<QcohReport> {
    let cone = TransitionCone::new(l, gamma, alpha)?;
    let homology = window
        .range()
        .map(|i| {
            let h = cohomology(&cone, i, window)?;
            Ok(ConeDegree { degree: i, dim: h.dim, stable: h.stable })
        })
        .collect::<Result<Vec<_>>>()?;
    let nerve = l.target.nerve();
    let quasi_isomorphism = homology.iter().all(|h| h.dim == 0);
    Ok(QcohReport { from: nerve.display(gamma), to: nerve.display(alpha), homology, quasi_isomorphism })
}

/// [`qcoh_check`] on every proper inclusion `γ ⊂ α` of the nerve.
pub fn qcoh_all(l: &DiagramModule, window: &TruncationWindow) -> Result<Vec<QcohReport>> {
    use rayon::prelude::*;
    let nerve = l.target.nerve();
    let pairs: Vec<(CellId, CellId)> =
        (0..nerve.len()).flat_map(|a| nerve.below(a).into_iter().filter(move |&g| g != a).map(move |g| (g, a))).collect();
    pairs.par_iter().map(|&(g, a)| qcoh_check(l, g, a, window)).collect()
}
