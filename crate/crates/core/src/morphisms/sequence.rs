use std::collections::BTreeMap;

use serde::Serialize;

use super::diagram::MorphismDiagram;
use crate::error::{Error, Result};
use crate::exactla::Echelon;
use crate::gca::{GenId, Monomial};
use crate::rational::Q;
use crate::tangent::{derivation_cohomology, DerComplex, DiagramDerivation};
use crate::window::{TruncationWindow, WindowedComplex};

/// The four derivation complexes of a morphism, all over the row-1
/// algebra.
pub struct MorphismComplexes<'a> {
    /// `Der(R_{•,0}, R_{•,0})`
    pub base: DerComplex<'a>,
    /// `Der(R_{•,1}, R_{•,1})`
    pub total: DerComplex<'a>,
    /// `Der(R_{•,0}, R_{•,1})`, derivations along the inclusion
    pub mixed: DerComplex<'a>,
    /// `Der(R_{••})`: compatible pairs, i.e. row-1 derivations preserving row 0
    pub pair: DerComplex<'a>,
}

pub fn morphism_derivation_complexes(m: &MorphismDiagram) -> MorphismComplexes<'_> {
    let r = &m.total;
    let alg = r.algebra();
    let base_slots: Vec<(GenId, Vec<GenId>)> = m.embedding.iter().map(|&g| (g, m.base_upto(r.cell_of(g)))).collect();
    let mixed_slots: Vec<(GenId, Vec<GenId>)> = m.embedding.iter().map(|&g| (g, r.generators_upto(r.cell_of(g)))).collect();
    let pair_slots: Vec<(GenId, Vec<GenId>)> = (0..alg.len() as GenId)
        .map(|g| {
            let cell = r.cell_of(g);
            (g, if m.is_base(g) { m.base_upto(cell) } else { r.generators_upto(cell) })
        })
        .collect();
    MorphismComplexes {
        base: DerComplex::new(alg, base_slots),
        total: DerComplex::of_resolvent(r),
        mixed: DerComplex::new(alg, mixed_slots),
        pair: DerComplex::new(alg, pair_slots),
    }
}

/// `σ`: restriction of a row-1 derivation to the row-0 slots.
pub fn sigma(m: &MorphismDiagram, theta: &DiagramDerivation) -> DiagramDerivation {
    let mut out = DiagramDerivation::zero(theta.degree);
    for &g in &m.embedding {
        if let Some(v) = theta.value(g) {
            out.set(g, v.clone());
        }
    }
    out
}

/// `τ`: a row-0 derivation composed with the inclusion. With generators
/// shared, this is the identity on slot values.
pub fn tau(theta: &DiagramDerivation) -> DiagramDerivation {
    theta.clone()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SequenceDegree {
    pub degree: i32,
    pub pair: usize,
    pub base: usize,
    pub total: usize,
    pub mixed: usize,
    pub sigma_surjective: bool,
    pub tau_injective: bool,
    /// `σ` and `τ` commute with the differentials on the windowed bases
    pub chain_maps: bool,
    pub kernel: usize,
    pub rank: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub window: TruncationWindow,
    pub degrees: Vec<SequenceDegree>,
    pub passed: bool,
}

fn rank_of(rows: &[Vec<(GenId, Monomial)>], index: &BTreeMap<(GenId, Monomial), usize>) -> usize {
    let mut e = Echelon::new();
    for row in rows {
        let mut v: Vec<(usize, Q)> = row.iter().map(|c| (index[c], Q::one())).collect();
        v.sort_by_key(|x| x.0);
        e.insert(v);
    }
    e.rank()
}

fn sequence_degree(m: &MorphismDiagram, cx: &MorphismComplexes<'_>, i: i32, d: u32) -> SequenceDegree {
    let pair = cx.pair.basis(i, d);
    let base = cx.base.basis(i, d);
    let total = cx.total.basis(i, d);
    let mixed = cx.mixed.basis(i, d);
    let index: BTreeMap<(GenId, Monomial), usize> = mixed.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
    let sigma_rows: Vec<Vec<(GenId, Monomial)>> =
        total.iter().map(|c| if m.is_base(c.0) { vec![c.clone()] } else { Vec::new() }).collect();
    let tau_rows: Vec<Vec<(GenId, Monomial)>> = base.iter().map(|c| vec![c.clone()]).collect();
    let sigma_surjective = rank_of(&sigma_rows, &index) == mixed.len();
    let tau_injective = rank_of(&tau_rows, &index) == base.len();

    // σ − τ on the direct sum
    let mut e = Echelon::new();
    for row in &sigma_rows {
        e.insert(row.iter().map(|c| (index[c], Q::one())).collect());
    }
    for row in &tau_rows {
        e.insert(row.iter().map(|c| (index[c], -Q::one())).collect());
    }
    let rank = e.rank();
    let kernel = base.len() + total.len() - rank;

    let elementary = |c: &(GenId, Monomial)| DiagramDerivation::elementary(i, c.0, c.1.clone(), Q::one());
    let chain_maps = total.iter().all(|c| {
        let t = elementary(c);
        cx.mixed.differential_of(&sigma(m, &t)) == sigma(m, &cx.total.differential_of(&t))
    }) && base.iter().all(|c| {
        let t = elementary(c);
        cx.mixed.differential_of(&tau(&t)) == tau(&cx.base.differential_of(&t))
    });
    let exact = rank == mixed.len() && kernel == pair.len();
    SequenceDegree {
        degree: i,
        pair: pair.len(),
        base: base.len(),
        total: total.len(),
        mixed: mixed.len(),
        sigma_surjective,
        tau_injective,
        chain_maps,
        kernel,
        rank,
        exact,
    }
}

/// Checks `0 → Der(R••) → Der(R₀) ⊕ Der(R₁) → Der(R₀, R₁) → 0` on the
/// windowed bases of every degree in the range.
pub fn sequence_check(m: &MorphismDiagram, window: &TruncationWindow) -> SequenceReport {
    let cx = morphism_derivation_complexes(m);
    let degrees: Vec<SequenceDegree> = window.range().map(|i| sequence_degree(m, &cx, i, window.weight)).collect();
    let passed = degrees.iter().all(|d| d.exact && d.sigma_surjective && d.tau_injective && d.chain_maps);
    SequenceReport { window: *window, degrees, passed }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MorphismDegree {
    pub degree: i32,
    /// `T^i(f)`
    pub morphism: usize,
    /// `T^i` of the domain, from row 1
    pub domain: usize,
    /// `T^i` of the codomain, from row 0
    pub codomain: usize,
    /// `H^i(Der(R₀, R₁))`
    pub mixed: usize,
    pub stable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismTangentReport {
    pub window: TruncationWindow,
    pub degrees: Vec<MorphismDegree>,
    /// `Σ (−1)^i (T^i(f) − T^i(X) − T^i(Y) + H^i(mixed))`
    pub euler_sum: i64,
    /// every group in the range is stable, so the Euler relation applies
    pub applicable: bool,
    pub euler_holds: bool,
}

fn windowed(cx: &DerComplex<'_>, i: i32, window: &TruncationWindow) -> Result<(usize, bool)> {
    match derivation_cohomology(cx, i, window) {
        Ok(h) => Ok((h.dim, h.stable)),
        Err(Error::WindowTooSmall { .. }) => Ok((0, true)),
        Err(e) => Err(e),
    }
}

/// Windowed `T^i(f) = H^i(Der(R••))` together with the other three terms
/// of the long exact sequence.
pub fn morphism_tangent(m: &MorphismDiagram, i: i32, window: &TruncationWindow) -> Result<MorphismDegree> {
    let cx = morphism_derivation_complexes(m);
    let ((pair, base), (total, mixed)) = rayon::join(
        || (windowed(&cx.pair, i, window), windowed(&cx.base, i, window)),
        || (windowed(&cx.total, i, window), windowed(&cx.mixed, i, window)),
    );
    let (pair, base, total, mixed) = (pair?, base?, total?, mixed?);
    Ok(MorphismDegree {
        degree: i,
        morphism: pair.0,
        domain: total.0,
        codomain: base.0,
        mixed: mixed.0,
        stable: pair.1 && base.1 && total.1 && mixed.1,
    })
}

/// [`morphism_tangent`] over the window's range with the Euler relation of
/// the long exact sequence.
pub fn morphism_tangent_report(m: &MorphismDiagram, window: &TruncationWindow) -> Result<MorphismTangentReport> {
    let degrees = window.range().map(|i| morphism_tangent(m, i, window)).collect::<Result<Vec<_>>>()?;
    let euler_sum: i64 = degrees
        .iter()
        .map(|d| {
            let term = d.morphism as i64 - d.domain as i64 - d.codomain as i64 + d.mixed as i64;
            if d.degree % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    let applicable = degrees.iter().all(|d| d.stable);
    Ok(MorphismTangentReport { window: *window, degrees, euler_sum, applicable, euler_holds: euler_sum == 0 })
}
