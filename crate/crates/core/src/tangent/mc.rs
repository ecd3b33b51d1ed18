use std::collections::BTreeMap;

use serde::Serialize;

use super::artin::ArtinCoefficient;
use super::derivation::{derivation_cohomology, lie_bracket, DerComplex, DiagramDerivation};
use crate::diagram::Resolvent;
use crate::error::{Error, Result};
use crate::exactla::Echelon;
use crate::gca::{Element, GenId, Monomial, SemifreeAlgebra};
use crate::rational::Q;
use crate::window::{solve, TruncationWindow, WindowedComplex};

/// An element `Σ θ_s ⊗ s` of `Der ⊗ 𝔪_A` of fixed total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinTensor {
    pub ring: ArtinCoefficient,
    pub degree: i32,
    /// symbol index to its derivation coefficient
    pub terms: BTreeMap<usize, DiagramDerivation>,
}

/// A degree-one tensor, a candidate solution of the Maurer–Cartan equation.
pub type MCElement = ArtinTensor;

impl ArtinTensor {
    pub fn zero(ring: &ArtinCoefficient, degree: i32) -> ArtinTensor {
        ArtinTensor { ring: ring.clone(), degree, terms: BTreeMap::new() }
    }

    /// `θ ⊗ s`.
    pub fn single(ring: &ArtinCoefficient, theta: DiagramDerivation, s: usize) -> ArtinTensor {
        let mut t = ArtinTensor::zero(ring, theta.degree + ring.degree(s));
        t.add_part(s, &Q::one(), &theta);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn part(&self, s: usize) -> Option<&DiagramDerivation> {
        self.terms.get(&s)
    }

    fn add_part(&mut self, s: usize, c: &Q, theta: &DiagramDerivation) {
        if theta.is_zero() || c.is_zero() {
            return;
        }
        let degree = self.degree - self.ring.degree(s);
        let mut cur = self.terms.remove(&s).unwrap_or_else(|| DiagramDerivation::zero(degree));
        cur.add_scaled(c, theta);
        if !cur.is_zero() {
            self.terms.insert(s, cur);
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &ArtinTensor) {
        for (&s, theta) in &other.terms {
            self.add_part(s, c, theta);
        }
    }

    pub fn add(&self, other: &ArtinTensor) -> ArtinTensor {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn sub(&self, other: &ArtinTensor) -> ArtinTensor {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn scaled(&self, c: &Q) -> ArtinTensor {
        let mut out = ArtinTensor::zero(&self.ring, self.degree);
        out.add_scaled(c, self);
        out
    }

    /// Text form: per symbol, the derivation terms.
    pub fn format(&self, alg: &SemifreeAlgebra) -> BTreeMap<String, Vec<String>> {
        self.terms.iter().map(|(&s, t)| (self.ring.symbols[s].clone(), t.format(alg))).collect()
    }
}

/// `D(θ ⊗ a) = Dθ ⊗ a + (−1)^{|θ|} θ ⊗ da`.
pub fn tensor_differential(cx: &DerComplex<'_>, x: &ArtinTensor) -> ArtinTensor {
    let ring = &x.ring;
    let mut out = ArtinTensor::zero(ring, x.degree + 1);
    for (&s, theta) in &x.terms {
        out.add_part(s, &Q::one(), &cx.differential_of(theta));
        let sign = if theta.degree % 2 != 0 { -Q::one() } else { Q::one() };
        for (t, q) in &ring.differential[s] {
            out.add_part(*t, &(&sign * q), theta);
        }
    }
    out
}

/// `[θ ⊗ a, φ ⊗ b] = (−1)^{|a||φ|} [θ, φ] ⊗ ab`.
pub fn tensor_bracket(alg: &SemifreeAlgebra, x: &ArtinTensor, y: &ArtinTensor) -> ArtinTensor {
    let ring = &x.ring;
    let mut out = ArtinTensor::zero(ring, x.degree + y.degree);
    for (&a, theta) in &x.terms {
        for (&b, phi) in &y.terms {
            let prod = &ring.products[a][b];
            if prod.is_empty() {
                continue;
            }
            let sign = if (ring.degree(a) * phi.degree) % 2 != 0 { -Q::one() } else { Q::one() };
            let br = lie_bracket(alg, theta, phi);
            for (c, q) in prod {
                out.add_part(*c, &(&sign * q), &br);
            }
        }
    }
    out
}

/// `Dη + ½[η, η]`.
pub fn mc_residue_in(cx: &DerComplex<'_>, eta: &MCElement) -> ArtinTensor {
    let mut r = tensor_differential(cx, eta);
    r.add_scaled(&Q::new(1, 2), &tensor_bracket(cx.algebra(), eta, eta));
    r
}

pub fn mc_residue(r: &Resolvent, eta: &MCElement) -> ArtinTensor {
    mc_residue_in(&DerComplex::of_resolvent(r), eta)
}

/// `e^θ ∗ η = η + Σ_k ad_θ^k([θ, η] − Dθ) / (k+1)!`, finite because `𝔪` is
/// nilpotent.
pub fn gauge_act(cx: &DerComplex<'_>, theta: &ArtinTensor, eta: &ArtinTensor) -> ArtinTensor {
    let alg = cx.algebra();
    let mut x = tensor_bracket(alg, theta, eta);
    x.add_scaled(&-Q::one(), &tensor_differential(cx, theta));
    let mut out = eta.clone();
    let mut factorial = Q::one();
    let mut k = 1i64;
    while !x.is_zero() {
        factorial = &factorial * &Q::from_int(k);
        out.add_scaled(&(&Q::one() / &factorial), &x);
        x = tensor_bracket(alg, theta, &x);
        k += 1;
    }
    out
}

fn solve_derivation(cx: &DerComplex<'_>, target: &DiagramDerivation, window: &TruncationWindow) -> Option<DiagramDerivation> {
    let chain = target.to_chain();
    let bound = window.weight.max(target.max_weight()) + window.margin;
    solve(cx, target.degree - 1, &chain, bound, window.margin).map(|c| DiagramDerivation::from_chain(target.degree - 1, &c))
}

#[derive(Clone, Debug)]
pub enum ExtensionOutcome {
    /// An MC element over `K[t]/(t^{n+1})` with first-order term `ξ ⊗ t`.
    Extended(MCElement),
    /// The obstruction at `order` is a cocycle that is not a boundary in the
    /// window while windowed `T²` is nonzero.
    Obstructed { order: u32, obstruction: DiagramDerivation, t2_dim: usize },
}

/// Lifts a degree-one cocycle order by order to an MC element over
/// `K[t]/(t^{n+1})`, choosing least-weight correctors.
pub fn mc_extend_in(cx: &DerComplex<'_>, xi: &DiagramDerivation, n: u32, window: &TruncationWindow) -> Result<ExtensionOutcome> {
    if xi.degree != 1 {
        return Err(Error::DegreeMismatch { generator: "ξ".into(), expected: 1, found: xi.degree });
    }
    let dxi = cx.differential_of(xi);
    if !dxi.is_zero() {
        return Err(Error::NotMaurerCartan { residue: dxi.format(cx.algebra()).join(" + ") });
    }
    let ring = ArtinCoefficient::truncated_polynomial(n.max(1) + 1);
    let mut eta = ArtinTensor::single(&ring, xi.clone(), 0);
    for k in 2..=n {
        let residue = mc_residue_in(cx, &eta);
        let Some(obstruction) = residue.part(k as usize - 1).cloned() else {
            continue;
        };
        match solve_derivation(cx, &obstruction.scaled(&-Q::one()), window) {
            Some(corrector) => eta.add_part(k as usize - 1, &Q::one(), &corrector),
            None => {
                let t2 = derivation_cohomology(cx, 2, window)?;
                if t2.dim == 0 {
                    return Err(Error::WindowTooSmall { degree: 1, weight: window.weight });
                }
                return Ok(ExtensionOutcome::Obstructed { order: k, obstruction, t2_dim: t2.dim });
            }
        }
    }
    Ok(ExtensionOutcome::Extended(eta))
}

pub fn mc_extend(r: &Resolvent, xi: &DiagramDerivation, n: u32, window: &TruncationWindow) -> Result<ExtensionOutcome> {
    mc_extend_in(&DerComplex::of_resolvent(r), xi, n, window)
}

#[derive(Clone, Debug)]
pub enum GaugeDecision {
    Equivalent(ArtinTensor),
    /// No gauge transformation found; the first symbol whose component could
    /// not be matched.
    NotEquivalent { symbol: String },
}

/// Searches level by level in the `𝔪`-adic filtration for `θ` of degree 0
/// with `e^θ ∗ η₁ = η₂`. Each level is a linear solve; choices of earlier
/// levels are the least-weight ones and are not revisited.
pub fn gauge_equivalent_in(cx: &DerComplex<'_>, eta1: &MCElement, eta2: &MCElement, window: &TruncationWindow) -> Result<GaugeDecision> {
    let ring = &eta1.ring;
    if *ring != eta2.ring {
        return Err(Error::InvalidArtin("MC elements over different coefficient rings".into()));
    }
    if !ring.has_zero_differential() {
        return Err(Error::InvalidArtin("gauge search needs a coefficient ring with zero differential".into()));
    }
    let mut theta = ArtinTensor::zero(ring, 0);
    let max_level = (0..ring.len()).map(|s| ring.level(s)).max().unwrap_or(0);
    for level in 1..=max_level {
        let delta = gauge_act(cx, &theta, eta1).sub(eta2);
        for s in (0..ring.len()).filter(|&s| ring.level(s) == level) {
            let Some(part) = delta.part(s) else { continue };
            match solve_derivation(cx, part, window) {
                Some(lambda) => theta.add_part(s, &Q::one(), &lambda),
                None => return Ok(GaugeDecision::NotEquivalent { symbol: ring.symbols[s].clone() }),
            }
        }
    }
    let delta = gauge_act(cx, &theta, eta1).sub(eta2);
    if let Some((&s, _)) = delta.terms.iter().next() {
        return Ok(GaugeDecision::NotEquivalent { symbol: ring.symbols[s].clone() });
    }
    Ok(GaugeDecision::Equivalent(theta))
}

pub fn gauge_equivalent(r: &Resolvent, eta1: &MCElement, eta2: &MCElement, window: &TruncationWindow) -> Result<GaugeDecision> {
    gauge_equivalent_in(&DerComplex::of_resolvent(r), eta1, eta2, window)
}

/// The algebra `R ⊗ A` with differential `d + η`.
///
/// An element is stored by components over the basis `1, s_1, …, s_n` of
/// `A`; component 0 is the reduction modulo `𝔪_A`.
#[derive(Clone, Debug)]
pub struct PerturbedAlgebra {
    base: SemifreeAlgebra,
    eta: ArtinTensor,
    /// `(d + η)(g)` by components
    differential: Vec<Vec<Element>>,
}

impl PerturbedAlgebra {
    /// Builds `d + η` without checking the MC equation.
    pub fn new(base: &SemifreeAlgebra, eta: &ArtinTensor) -> PerturbedAlgebra {
        let n = eta.ring.len();
        let differential = (0..base.len() as GenId)
            .map(|g| {
                let mut comps = vec![Element::zero(); n + 1];
                comps[0] = base.differential_of(g).clone();
                for (&s, theta) in &eta.terms {
                    if let Some(v) = theta.value(g) {
                        comps[s + 1] = v.clone();
                    }
                }
                comps
            })
            .collect();
        PerturbedAlgebra { base: base.clone(), eta: eta.clone(), differential }
    }

    pub fn ring(&self) -> &ArtinCoefficient {
        &self.eta.ring
    }

    pub fn base(&self) -> &SemifreeAlgebra {
        &self.base
    }

    /// `(d + η)(g)` by components.
    pub fn differential_of(&self, g: GenId) -> &[Element] {
        &self.differential[g as usize]
    }

    /// Applies `d + η` to an element of `R ⊗ A` given by components.
    pub fn apply(&self, x: &[Element]) -> Vec<Element> {
        let ring = &self.eta.ring;
        let n = ring.len();
        let mut out = vec![Element::zero(); n + 1];
        let units: Vec<Vec<(usize, Q)>> = (0..n).map(|s| vec![(s, Q::one())]).collect();
        for (b, y) in x.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let dy = self.base.apply_differential(y);
            out[b].add_scaled(&Q::one(), &dy);
            for (&s, theta) in &self.eta.terms {
                // (η_s ⊗ s)(y ⊗ b) = (−1)^{|s||y|} η_s(y) ⊗ s·b
                let v = theta.extend(&self.base, y);
                if v.is_zero() {
                    continue;
                }
                let sign = if (ring.degree(s) * y.degree().unwrap_or(0)) % 2 != 0 { -Q::one() } else { Q::one() };
                if b == 0 {
                    out[s + 1].add_scaled(&sign, &v);
                } else {
                    for (c, q) in ring.mul(&units[s], &units[b - 1]) {
                        out[c + 1].add_scaled(&(&sign * &q), &v);
                    }
                }
            }
            if b > 0 {
                let sign = if y.degree().unwrap_or(0) % 2 != 0 { -Q::one() } else { Q::one() };
                for (c, q) in &ring.differential[b - 1] {
                    out[c + 1].add_scaled(&(&sign * q), y);
                }
            }
        }
        out
    }

    /// Generators `g` with `(d + η)²(g) != 0`.
    pub fn check_d_squared(&self) -> Vec<GenId> {
        (0..self.base.len() as GenId).filter(|&g| self.apply(&self.differential[g as usize]).iter().any(|e| !e.is_zero())).collect()
    }

    /// The algebra obtained by setting `𝔪_A` to zero.
    pub fn reduce(&self) -> SemifreeAlgebra {
        let mut out = SemifreeAlgebra::new();
        for (g, decl) in self.base.generators().iter().enumerate() {
            out.add_generator(&decl.name, decl.degree, decl.cell, self.differential[g][0].clone()).expect("reduction of a valid algebra");
        }
        out
    }

    pub fn format_differential(&self, g: GenId) -> String {
        let ring = &self.eta.ring;
        let comps = &self.differential[g as usize];
        let mut parts = vec![self.base.format(&comps[0])];
        for (s, c) in comps.iter().enumerate().skip(1) {
            if !c.is_zero() {
                parts.push(format!("({})*{}", self.base.format(c), ring.symbols[s - 1]));
            }
        }
        parts.join(" + ")
    }
}

/// The resolvent with its differential perturbed by an MC element.
#[derive(Clone, Debug)]
pub struct PerturbedResolvent {
    pub resolvent: Resolvent,
    pub algebra: PerturbedAlgebra,
}

impl PerturbedResolvent {
    /// The resolvent obtained by reducing coefficients modulo `𝔪_A`.
    pub fn reduce(&self) -> Resolvent {
        let reduced = self.algebra.reduce();
        let mut out = Resolvent::new(self.resolvent.nerve().clone());
        for (g, decl) in reduced.generators().iter().enumerate() {
            out.add_generator(&decl.name, decl.degree, decl.cell, reduced.differential_of(g as GenId).clone(), self.resolvent.own_augmentation(g as GenId).clone())
                .expect("reduction of a valid resolvent");
        }
        out
    }
}

/// `(R ⊗ A, d + η)`; rejects `η` whose MC residue is nonzero.
pub fn perturbed_diagram(r: &Resolvent, eta: &MCElement) -> Result<PerturbedResolvent> {
    let residue = mc_residue(r, eta);
    if !residue.is_zero() {
        let text = residue.format(r.algebra()).into_iter().map(|(s, t)| format!("({})⊗{s}", t.join(" + "))).collect::<Vec<_>>().join(" + ");
        return Err(Error::NotMaurerCartan { residue: text });
    }
    Ok(PerturbedResolvent { resolvent: r.clone(), algebra: PerturbedAlgebra::new(r.algebra(), eta) })
}

/// First-order deformations counted through the MC equation and the gauge
/// action over `K[t]/(t²)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FirstOrderCount {
    /// dimension of the MC elements `ξ ⊗ t` with `weight(ξ) <= D`
    pub mc_dim: usize,
    /// rank of gauge directions from `Der⁰` of weight `<= D + m`, inside weight `D`
    pub gauge_rank: usize,
    pub classes: usize,
}

pub fn first_order_classes(cx: &DerComplex<'_>, window: &TruncationWindow) -> FirstOrderCount {
    let (d, m) = (window.weight, window.margin);
    let ring = ArtinCoefficient::truncated_polynomial(2);
    let source = cx.basis(1, d);
    let residues: Vec<DiagramDerivation> = source
        .iter()
        .map(|(g, mono)| {
            let eta = ArtinTensor::single(&ring, DiagramDerivation::elementary(1, *g, mono.clone(), Q::one()), 0);
            mc_residue_in(cx, &eta).part(0).cloned().unwrap_or_else(|| DiagramDerivation::zero(2))
        })
        .collect();
    let zero = ArtinTensor::zero(&ring, 1);
    let gauges: Vec<DiagramDerivation> = cx
        .basis(0, d + m)
        .into_iter()
        .map(|(g, mono)| {
            let theta = ArtinTensor::single(&ring, DiagramDerivation::elementary(0, g, mono, Q::one()), 0);
            gauge_act(cx, &theta, &zero).part(0).cloned().unwrap_or_else(|| DiagramDerivation::zero(1))
        })
        .collect();

    // MC elements: kernel of ξ ↦ residue, via an augmented echelon
    let mut coords: Vec<(GenId, Monomial)> = residues.iter().flat_map(|r| r.to_chain()).map(|(c, _)| c).collect();
    coords.sort();
    coords.dedup();
    let index: BTreeMap<&(GenId, Monomial), usize> = coords.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let offset = coords.len();
    let mut e = Echelon::new();
    for (k, r) in residues.iter().enumerate() {
        let mut row: Vec<(usize, Q)> = r.to_chain().iter().map(|(c, q)| (index[c], q.clone())).collect();
        row.sort_by_key(|x| x.0);
        row.push((offset + k, Q::one()));
        e.insert(row);
    }
    let mc_dim = e.rows().iter().filter(|r| r[0].0 >= offset).count();

    // gauge directions intersected with weight <= D, heaviest coordinates first
    let mut all: Vec<(GenId, Monomial)> = gauges.iter().flat_map(|g| g.to_chain()).map(|(c, _)| c).collect();
    all.sort_by(|a, b| b.1.weight().cmp(&a.1.weight()).then_with(|| b.cmp(a)));
    all.dedup();
    let pos: BTreeMap<&(GenId, Monomial), usize> = all.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let mut g = Echelon::new();
    for v in &gauges {
        let mut row: Vec<(usize, Q)> = v.to_chain().iter().map(|(c, q)| (pos[c], q.clone())).collect();
        row.sort_by_key(|x| x.0);
        g.insert(row);
    }
    let gauge_rank = g.rows().iter().filter(|r| all[r[0].0].1.weight() <= d).count();
    FirstOrderCount { mc_dim, gauge_rank, classes: mc_dim - gauge_rank }
}
