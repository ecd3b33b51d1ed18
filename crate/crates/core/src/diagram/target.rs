use std::collections::BTreeMap;

use serde::Serialize;

use super::nerve::{CellId, Nerve};
use crate::error::{Error, Result};
use crate::exactla::Echelon;
use crate::gca::{AlgebraMap, Element, GenId, Monomial, SemifreeAlgebra};
use crate::rational::Q;

/// A commutative algebra presented as a polynomial ring modulo relations.
#[derive(Clone, Debug)]
pub struct ChartPresentation {
    algebra: SemifreeAlgebra,
    relations: Vec<Element>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Member,
    NotMember,
    /// No certificate within the window, but non-membership is not proven.
    Unverified,
}

impl ChartPresentation {
    pub fn new(variables: &[&str]) -> Result<ChartPresentation> {
        let mut algebra = SemifreeAlgebra::new();
        for v in variables {
            algebra.add_generator(v, 0, 0, Element::zero())?;
        }
        Ok(ChartPresentation { algebra, relations: Vec::new() })
    }

    pub fn add_relation(&mut self, r: Element) -> Result<()> {
        if let Some(d) = r.terms().map(|(m, _)| m.degree()).find(|&d| d != 0) {
            return Err(Error::DegreeMismatch { generator: "relation".into(), expected: 0, found: d });
        }
        if !r.is_zero() {
            self.relations.push(r);
        }
        Ok(())
    }

    pub fn algebra(&self) -> &SemifreeAlgebra {
        &self.algebra
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn variables(&self) -> Vec<&str> {
        self.algebra.generators().iter().map(|g| g.name.as_str()).collect()
    }

    pub fn all_gens(&self) -> Vec<GenId> {
        (0..self.algebra.len() as GenId).collect()
    }

    /// Monomials of weight at most `max_weight`.
    pub fn slice(&self, max_weight: u32) -> Vec<Monomial> {
        self.algebra.slice(&self.all_gens(), 0, max_weight)
    }

    /// Spanning set `{r * mu}` of the relation ideal in weight at most
    /// `max_weight` (measured by the heaviest term).
    pub fn ideal_span(&self, max_weight: u32) -> Vec<Element> {
        let mut out = Vec::new();
        for r in &self.relations {
            let w = r.max_weight();
            if w > max_weight {
                continue;
            }
            for mu in self.slice(max_weight - w) {
                out.push(r.mul_monomial_left(&mu, &Q::one()));
            }
        }
        out
    }

    /// Windowed ideal membership. Certificates `sum r_k c_k` are searched
    /// with `weight(r_k c_k) <= weight(f) + extra`.
    pub fn membership(&self, f: &Element, extra: u32) -> Membership {
        if f.is_zero() {
            return Membership::Member;
        }
        let w = f.max_weight().max(self.relations.iter().map(Element::max_weight).max().unwrap_or(0)) + extra;
        let span = self.ideal_span(w);
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        for e in span.iter().chain(std::iter::once(f)) {
            for (m, _) in e.terms() {
                let n = index.len();
                index.entry(m.clone()).or_insert(n);
            }
        }
        // heaviest monomials first
        let mut order: Vec<&Monomial> = index.keys().collect();
        order.reverse();
        let pos: BTreeMap<&Monomial, usize> = order.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let vec_of = |e: &Element| {
            let mut v: Vec<(usize, Q)> = e.terms().map(|(m, q)| (pos[m], q.clone())).collect();
            v.sort_by_key(|x| x.0);
            v
        };
        let mut ech = Echelon::new();
        for e in &span {
            ech.insert(vec_of(e));
        }
        if ech.contains(&vec_of(f)) {
            return Membership::Member;
        }
        // In a principal ideal of a polynomial ring, f = r c forces
        // weight(c) = weight(f) - weight(r), which the window covers.
        if self.relations.len() <= 1 {
            Membership::NotMember
        } else {
            Membership::Unverified
        }
    }
}

/// The chart diagram: a presentation per cell and a restriction map per
/// codimension-one inclusion.
#[derive(Clone, Debug)]
pub struct TargetDiagram {
    nerve: Nerve,
    charts: Vec<ChartPresentation>,
    restrictions: BTreeMap<(CellId, CellId), AlgebraMap>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramIssue {
    pub kind: String,
    pub from: String,
    pub to: String,
    pub generator: String,
    pub residue: String,
    pub verdict: Membership,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub issues: Vec<DiagramIssue>,
}

impl TargetDiagram {
    pub fn new(
        nerve: Nerve,
        charts: Vec<ChartPresentation>,
        restrictions: BTreeMap<(CellId, CellId), AlgebraMap>,
    ) -> Result<TargetDiagram> {
        if charts.len() != nerve.len() {
            return Err(Error::Validation(format!("{} presentations for {} cells", charts.len(), nerve.len())));
        }
        for (g, a) in nerve.covering_pairs() {
            let Some(f) = restrictions.get(&(g, a)) else {
                return Err(Error::Validation(format!("missing restriction {} -> {}", nerve.display(g), nerve.display(a))));
            };
            if f.images().len() != charts[g].algebra.len() {
                return Err(Error::Validation(format!(
                    "restriction {} -> {} has {} images for {} variables",
                    nerve.display(g),
                    nerve.display(a),
                    f.images().len(),
                    charts[g].algebra.len()
                )));
            }
        }
        Ok(TargetDiagram { nerve, charts, restrictions })
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn chart(&self, cell: CellId) -> &ChartPresentation {
        &self.charts[cell]
    }

    pub fn charts(&self) -> &[ChartPresentation] {
        &self.charts
    }

    pub fn one_step(&self, gamma: CellId, alpha: CellId) -> Option<&AlgebraMap> {
        self.restrictions.get(&(gamma, alpha))
    }

    pub fn one_step_maps(&self) -> &BTreeMap<(CellId, CellId), AlgebraMap> {
        &self.restrictions
    }

    /// Restriction `S_γ -> S_α` composed along the canonical chain.
    pub fn restriction(&self, gamma: CellId, alpha: CellId) -> AlgebraMap {
        let chain = self.nerve.canonical_chain(gamma, alpha);
        let mut map = AlgebraMap::identity(&self.charts[gamma].algebra);
        for w in chain.windows(2) {
            map = map.compose(&self.restrictions[&(w[0], w[1])]);
        }
        map
    }

    /// Checks that restrictions respect relations and that all squares
    /// commute modulo the target relations.
    pub fn validate(&self, extra: u32) -> ValidationReport {
        let mut issues = Vec::new();
        for (&(g, a), f) in &self.restrictions {
            for r in &self.charts[g].relations {
                let image = f.apply(r);
                let verdict = self.charts[a].membership(&image, extra);
                if verdict != Membership::Member {
                    issues.push(DiagramIssue {
                        kind: "relation".into(),
                        from: self.nerve.display(g),
                        to: self.nerve.display(a),
                        generator: self.charts[g].algebra.format(r),
                        residue: self.charts[a].algebra.format(&image),
                        verdict,
                    });
                }
            }
        }
        for a in 0..self.nerve.len() {
            for g in self.nerve.below(a) {
                if self.nerve.degree(g) + 2 != self.nerve.degree(a) {
                    continue;
                }
                let mids: Vec<CellId> =
                    self.nerve.faces(a).into_iter().filter(|&m| self.nerve.leq(g, m)).collect();
                for pair in mids.windows(2) {
                    let f1 = self.restrictions[&(g, pair[0])].compose(&self.restrictions[&(pair[0], a)]);
                    let f2 = self.restrictions[&(g, pair[1])].compose(&self.restrictions[&(pair[1], a)]);
                    for v in 0..self.charts[g].algebra.len() as GenId {
                        let diff = f1.image(v).sub(f2.image(v));
                        let verdict = self.charts[a].membership(&diff, extra);
                        if verdict != Membership::Member {
                            issues.push(DiagramIssue {
                                kind: "functoriality".into(),
                                from: self.nerve.display(g),
                                to: self.nerve.display(a),
                                generator: self.charts[g].algebra.generator(v).name.clone(),
                                residue: self.charts[a].algebra.format(&diff),
                                verdict,
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { passed: issues.is_empty(), issues }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbola() -> ChartPresentation {
        let mut s = ChartPresentation::new(&["t", "w"]).unwrap();
        let a = s.algebra().clone();
        s.add_relation(a.var(0).mul(&a.var(1)).sub(&Element::one())).unwrap();
        s
    }

    #[test]
    fn membership_in_principal_ideal() {
        let s = hyperbola();
        let a = s.algebra().clone();
        let (t, w) = (a.var(0), a.var(1));
        // t^6 - t^6 = 0 and t^2 w^2 - 1 = (tw - 1)(tw + 1)
        let f = t.pow(2).mul(&w.pow(2)).sub(&Element::one());
        assert_eq!(s.membership(&f, 0), Membership::Member);
        let g = t.pow(4).sub(&t.pow(6));
        assert_eq!(s.membership(&g, 2), Membership::NotMember);
    }
}
