use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{reachable_degrees, Resolvent};
use crate::error::Result;
use crate::gca::{Element, GenId, Monomial, SemifreeAlgebra};
use crate::rational::Q;
use crate::window::{cohomology, Chain, TruncationWindow, WindowedComplex};

/// A derivation of the diagram, stored as its values on generators.
///
/// A value for `g` lives in the algebra of the cell `g` is attached to
/// (its slot), which is what makes the family of cellwise derivations
/// natural. Absent generators map to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramDerivation {
    pub degree: i32,
    pub values: BTreeMap<GenId, Element>,
}

impl DiagramDerivation {
    pub fn zero(degree: i32) -> DiagramDerivation {
        DiagramDerivation { degree, values: BTreeMap::new() }
    }

    /// `c·m·∂/∂g`.
    pub fn elementary(degree: i32, g: GenId, m: Monomial, c: Q) -> DiagramDerivation {
        let mut d = DiagramDerivation::zero(degree);
        d.set(g, Element::term(m, c));
        d
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, g: GenId) -> Option<&Element> {
        self.values.get(&g)
    }

    pub fn set(&mut self, g: GenId, v: Element) {
        if v.is_zero() {
            self.values.remove(&g);
        } else {
            self.values.insert(g, v);
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &DiagramDerivation) {
        for (&g, v) in &other.values {
            let mut cur = self.values.remove(&g).unwrap_or_default();
            cur.add_scaled(c, v);
            self.set(g, cur);
        }
    }

    pub fn add(&self, other: &DiagramDerivation) -> DiagramDerivation {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn sub(&self, other: &DiagramDerivation) -> DiagramDerivation {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn scaled(&self, c: &Q) -> DiagramDerivation {
        let mut out = DiagramDerivation::zero(self.degree);
        out.add_scaled(c, self);
        out
    }

    /// Values as a vector indexed by generator, for the extension routines.
    fn table(&self) -> Vec<Element> {
        let n = self.values.keys().next_back().map_or(0, |&g| g as usize + 1);
        let mut t = vec![Element::zero(); n];
        for (&g, v) in &self.values {
            t[g as usize] = v.clone();
        }
        t
    }

    /// The unique derivation of `alg` extending these values, applied to `a`.
    pub fn extend(&self, alg: &SemifreeAlgebra, a: &Element) -> Element {
        if self.is_zero() {
            return Element::zero();
        }
        alg.derive(a, self.degree, &self.table())
    }

    pub fn to_chain(&self) -> Chain<(GenId, Monomial)> {
        self.values.iter().flat_map(|(&g, v)| v.terms().map(move |(m, q)| ((g, m.clone()), q.clone()))).collect()
    }

    pub fn from_chain(degree: i32, chain: &[((GenId, Monomial), Q)]) -> DiagramDerivation {
        let mut d = DiagramDerivation::zero(degree);
        for ((g, m), q) in chain {
            let mut cur = d.values.remove(g).unwrap_or_default();
            cur.add_term(m.clone(), q);
            d.set(*g, cur);
        }
        d
    }

    pub fn max_weight(&self) -> u32 {
        self.values.values().map(Element::max_weight).max().unwrap_or(0)
    }

    /// Canonical text: one `value * d/d<gen>` string per monomial term,
    /// generators in order, terms heaviest first.
    pub fn format(&self, alg: &SemifreeAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        for (&g, v) in &self.values {
            for (m, q) in v.terms().rev() {
                let t = alg.format(&Element::term(m.clone(), q.clone()));
                out.push(format!("{t} * d/d{}", alg.generator(g).name));
            }
        }
        out
    }
}

/// `[θ,φ](g) = θ(φ(g)) − (−1)^{ij} φ(θ(g))`, extending both as derivations.
pub fn lie_bracket(alg: &SemifreeAlgebra, theta: &DiagramDerivation, phi: &DiagramDerivation) -> DiagramDerivation {
    let (i, j) = (theta.degree, phi.degree);
    let sign = if (i * j) % 2 != 0 { Q::one() } else { -Q::one() };
    let mut out = DiagramDerivation::zero(i + j);
    let mut slots: Vec<GenId> = theta.values.keys().chain(phi.values.keys()).copied().collect();
    slots.sort_unstable();
    slots.dedup();
    for g in slots {
        let mut v = Element::zero();
        if let Some(pg) = phi.value(g) {
            v = theta.extend(alg, pg);
        }
        if let Some(tg) = theta.value(g) {
            v.add_scaled(&sign, &phi.extend(alg, tg));
        }
        out.set(g, v);
    }
    out
}

#[derive(Clone, Debug)]
struct Slot {
    gen: GenId,
    /// generators allowed in values
    values: Vec<GenId>,
}

/// The complex of derivations over a set of generator slots, each slot
/// valued in the subalgebra on a given generator set.
///
/// Coordinates are `(g, m)`: the derivation sending `g` to the monomial
/// `m` and every other slot to zero. Weight is the weight of `m`.
pub struct DerComplex<'a> {
    alg: &'a SemifreeAlgebra,
    slots: Vec<Slot>,
    slot_of: BTreeMap<GenId, usize>,
    /// slots whose differential mentions a generator
    dependents: Vec<Vec<usize>>,
}

impl<'a> DerComplex<'a> {
    /// `slots` pairs each source generator with the generators its value may
    /// use. Differentials of slot generators must only involve slot
    /// generators.
    pub fn new(alg: &'a SemifreeAlgebra, slots: Vec<(GenId, Vec<GenId>)>) -> DerComplex<'a> {
        let slots: Vec<Slot> = slots.into_iter().map(|(gen, values)| Slot { gen, values }).collect();
        let slot_of: BTreeMap<GenId, usize> = slots.iter().enumerate().map(|(k, s)| (s.gen, k)).collect();
        let mut dependents = vec![Vec::new(); alg.len()];
        for (k, s) in slots.iter().enumerate() {
            let mut seen: Vec<GenId> = alg.differential_of(s.gen).terms().flat_map(|(m, _)| m.generators().collect::<Vec<_>>()).collect();
            seen.sort_unstable();
            seen.dedup();
            for g in seen {
                dependents[g as usize].push(k);
            }
        }
        DerComplex { alg, slots, slot_of, dependents }
    }

    /// `Der(R, R)` of a resolvent: every generator is a slot valued in the
    /// algebra of its cell.
    pub fn of_resolvent(r: &'a Resolvent) -> DerComplex<'a> {
        let slots = (0..r.algebra().len() as GenId).map(|g| (g, r.generators_upto(r.cell_of(g)))).collect();
        DerComplex::new(r.algebra(), slots)
    }

    pub fn algebra(&self) -> &'a SemifreeAlgebra {
        self.alg
    }

    pub fn slot_generators(&self) -> Vec<GenId> {
        self.slots.iter().map(|s| s.gen).collect()
    }

    /// Generators a slot's value may use; `None` when `g` is not a slot.
    pub fn slot_values(&self, g: GenId) -> Option<&[GenId]> {
        self.slot_of.get(&g).map(|&k| self.slots[k].values.as_slice())
    }

    /// `(Dθ)(g) = d(θ(g)) − (−1)^i θ(dg)` on every slot.
    pub fn differential_of(&self, theta: &DiagramDerivation) -> DiagramDerivation {
        let i = theta.degree;
        let sign = if i % 2 == 0 { -Q::one() } else { Q::one() };
        let table = theta.table();
        let mut out = DiagramDerivation::zero(i + 1);
        for s in &self.slots {
            let mut v = theta.value(s.gen).map(|t| self.alg.apply_differential(t)).unwrap_or_default();
            if !theta.is_zero() {
                v.add_scaled(&sign, &self.alg.derive(self.alg.differential_of(s.gen), i, &table));
            }
            out.set(s.gen, v);
        }
        out
    }

    /// Elementary derivations of degree `i` with values of weight `<= max_weight`.
    pub fn basis_derivations(&self, i: i32, max_weight: u32) -> Vec<DiagramDerivation> {
        self.basis(i, max_weight).into_iter().map(|(g, m)| DiagramDerivation::elementary(i, g, m, Q::one())).collect()
    }

    fn slot_degree(&self, s: &Slot, i: i32) -> i32 {
        self.alg.generator(s.gen).degree + i
    }
}

impl WindowedComplex for DerComplex<'_> {
    type Coord = (GenId, Monomial);

    fn weight(&self, c: &(GenId, Monomial)) -> u32 {
        c.1.weight()
    }

    fn basis(&self, i: i32, max_weight: u32) -> Vec<(GenId, Monomial)> {
        let mut out = Vec::new();
        for s in &self.slots {
            let deg = self.slot_degree(s, i);
            if deg > 0 {
                continue;
            }
            out.extend(self.alg.slice(&s.values, deg, max_weight).into_iter().map(|m| (s.gen, m)));
        }
        out
    }

    fn structurally_empty(&self, i: i32) -> bool {
        self.slots.iter().all(|s| {
            let deg = self.slot_degree(s, i);
            if deg > 0 {
                return true;
            }
            let degrees: Vec<(i32, bool)> = s
                .values
                .iter()
                .map(|&g| {
                    let d = self.alg.generator(g);
                    (d.degree, d.is_odd())
                })
                .collect();
            !reachable_degrees(&degrees, deg).contains(&deg)
        })
    }

    fn differential(&self, i: i32, c: &(GenId, Monomial)) -> Vec<((GenId, Monomial), Q)> {
        let (g, m) = c;
        let value = Element::from_monomial(m.clone());
        let mut out: Vec<((GenId, Monomial), Q)> = Vec::new();
        if self.slot_of.contains_key(g) {
            let dm = self.alg.apply_differential(&value);
            out.extend(dm.terms().map(|(t, q)| ((*g, t.clone()), q.clone())));
        }
        let sign = if i % 2 == 0 { -Q::one() } else { Q::one() };
        let mut table = vec![Element::zero(); *g as usize + 1];
        table[*g as usize] = value;
        for &k in &self.dependents[*g as usize] {
            let h = self.slots[k].gen;
            let v = self.alg.derive(self.alg.differential_of(h), i, &table);
            out.extend(v.terms().map(|(t, q)| ((h, t.clone()), &sign * q)));
        }
        out
    }
}

/// Elementary derivations `m·∂/∂g` of `Der^i(R, R)` with `weight(m) <= D`.
pub fn derivation_basis(r: &Resolvent, i: i32, window: &TruncationWindow) -> Vec<DiagramDerivation> {
    DerComplex::of_resolvent(r).basis_derivations(i, window.weight)
}

pub fn der_differential(r: &Resolvent, theta: &DiagramDerivation) -> DiagramDerivation {
    DerComplex::of_resolvent(r).differential_of(theta)
}

#[derive(Clone, Debug)]
pub struct TangentCohomology {
    pub degree: i32,
    pub dim: usize,
    pub stable: bool,
    pub cycles: usize,
    pub boundaries: usize,
    pub representatives: Vec<DiagramDerivation>,
}

/// Windowed `H^i` of any derivation complex.
pub fn derivation_cohomology(cx: &DerComplex<'_>, i: i32, window: &TruncationWindow) -> Result<TangentCohomology> {
    let h = cohomology(cx, i, window)?;
    Ok(TangentCohomology {
        degree: i,
        dim: h.dim,
        stable: h.stable,
        cycles: h.cycles,
        boundaries: h.boundaries,
        representatives: h.representatives.iter().map(|c| DiagramDerivation::from_chain(i, c)).collect(),
    })
}

/// Windowed tangent cohomology `T^i`, computed from `Der(R, R)`.
pub fn tangent_cohomology(r: &Resolvent, i: i32, window: &TruncationWindow) -> Result<TangentCohomology> {
    derivation_cohomology(&DerComplex::of_resolvent(r), i, window)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeSummary {
    pub dim: usize,
    pub stable: bool,
}
