use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::element::Element;
use super::monomial::{GenId, Monomial};
use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDecl {
    pub name: String,
    pub degree: i32,
    /// Index of the cell the generator is attached to; 0 for plain algebras.
    pub cell: usize,
    pub weight: u32,
}

impl GeneratorDecl {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 != 0
    }
}

/// A semifree graded-commutative algebra in nonpositive degrees: a free
/// algebra on ordered generators with a differential that sends each
/// generator into the subalgebra on earlier ones.
#[derive(Clone, Debug, Default)]
pub struct SemifreeAlgebra {
    gens: Vec<GeneratorDecl>,
    diff: Vec<Element>,
    by_name: HashMap<String, GenId>,
}

impl SemifreeAlgebra {
    pub fn new() -> SemifreeAlgebra {
        SemifreeAlgebra::default()
    }

    /// Adjoins a generator. Degree-zero generators have weight 1; others
    /// inherit the weight of their differential, at least 1.
    pub fn add_generator(&mut self, name: &str, degree: i32, cell: usize, d: Element) -> Result<GenId> {
        if self.by_name.contains_key(name) {
            return Err(Error::Validation(format!("duplicate generator `{name}`")));
        }
        if degree > 0 {
            return Err(Error::DegreeMismatch { generator: name.into(), expected: 0, found: degree });
        }
        if degree == 0 && !d.is_zero() {
            return Err(Error::Validation(format!("degree-zero generator `{name}` must be closed")));
        }
        if let Some((m, _)) = d.terms().find(|(m, _)| m.degree() != degree + 1) {
            return Err(Error::DegreeMismatch { generator: name.into(), expected: degree + 1, found: m.degree() });
        }
        let id = self.gens.len() as GenId;
        if let Some(g) = d.terms().flat_map(|(m, _)| m.generators().collect::<Vec<_>>()).find(|&g| g >= id) {
            return Err(Error::Validation(format!("differential of `{name}` uses later generator {g}")));
        }
        let weight = if degree == 0 { 1 } else { d.max_weight().max(1) };
        self.gens.push(GeneratorDecl { name: name.into(), degree, cell, weight });
        self.diff.push(d);
        self.by_name.insert(name.into(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.gens
    }

    pub fn generator(&self, g: GenId) -> &GeneratorDecl {
        &self.gens[g as usize]
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn differential_of(&self, g: GenId) -> &Element {
        &self.diff[g as usize]
    }

    pub fn monomial(&self, g: GenId) -> Monomial {
        let d = &self.gens[g as usize];
        Monomial::generator(g, d.degree, d.weight)
    }

    pub fn var(&self, g: GenId) -> Element {
        Element::from_monomial(self.monomial(g))
    }

    /// `g^e` as a monomial; `None` if `g` is odd and `e > 1`.
    pub fn power(&self, g: GenId, e: u32) -> Option<Monomial> {
        let d = &self.gens[g as usize];
        if e == 0 {
            return Some(Monomial::one());
        }
        if d.is_odd() {
            return (e == 1).then(|| self.monomial(g));
        }
        Some(Monomial::from_parts(d.weight * e, d.degree * e as i32, vec![(g, e)], Vec::new()))
    }

    pub fn apply_differential(&self, a: &Element) -> Element {
        self.derive(a, 1, &self.diff)
    }

    /// Extends generator values `theta` (indexed by generator, shorter means
    /// zero) to a derivation of degree `i` and applies it to `a`.
    pub fn derive(&self, a: &Element, i: i32, theta: &[Element]) -> Element {
        self.derive_along(a, i, theta, &|m: &Monomial| Element::from_monomial(m.clone()))
    }

    /// Like [`derive`](Self::derive) for a derivation along an algebra map:
    /// the untouched factors are pushed forward through `push`, which must be
    /// multiplicative and degree preserving.
    pub fn derive_along(&self, a: &Element, i: i32, theta: &[Element], push: &dyn Fn(&Monomial) -> Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            for (g, e, _) in m.factors() {
                let Some(tg) = theta.get(g as usize).filter(|t| !t.is_zero()) else {
                    continue;
                };
                let (before, after) = m.split_at(g, |x| self.gens[x as usize].weight, |x| self.gens[x as usize].degree);
                let sign = if (i * before.degree()) % 2 != 0 { -Q::one() } else { Q::one() };
                let coeff = &(c * &sign) * &Q::from_int(e as i64);
                let mut t = push(&before);
                if e > 1 {
                    t = t.mul(&push(&self.power(g, e - 1).expect("even generator")));
                }
                t = t.mul(tg).mul(&push(&after));
                out.add_scaled(&coeff, &t);
            }
        }
        out
    }

    /// Generators whose differential does not square to zero, with `d(d g)`.
    pub fn check_d_squared(&self) -> Vec<(GenId, Element)> {
        (0..self.gens.len() as GenId)
            .filter_map(|g| {
                let dd = self.apply_differential(&self.diff[g as usize]);
                (!dd.is_zero()).then_some((g, dd))
            })
            .collect()
    }

    /// All monomials in the generators `gens` of the given degree and weight
    /// at most `max_weight`, in ascending monomial order.
    pub fn slice(&self, gens: &[GenId], degree: i32, max_weight: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.enumerate(&sorted, 0, degree, max_weight, 0, 0, &mut even, &mut odd, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        gens: &[GenId],
        k: usize,
        degree: i32,
        budget: u32,
        weight: u32,
        deg: i32,
        even: &mut Vec<(GenId, u32)>,
        odd: &mut Vec<GenId>,
        out: &mut Vec<Monomial>,
    ) {
        if deg < degree {
            return;
        }
        if k == gens.len() {
            if deg == degree {
                out.push(Monomial::from_parts(weight, deg, even.clone(), odd.clone()));
            }
            return;
        }
        let g = gens[k];
        let d = &self.gens[g as usize];
        let max_e = if d.is_odd() { 1 } else { (budget - weight) / d.weight };
        let max_e = if d.is_odd() && d.weight > budget - weight { 0 } else { max_e };
        for e in 0..=max_e {
            let w = weight + d.weight * e;
            let dg = deg + d.degree * e as i32;
            if dg < degree {
                break;
            }
            if e > 0 {
                if d.is_odd() {
                    odd.push(g);
                } else {
                    even.push((g, e));
                }
            }
            self.enumerate(gens, k + 1, degree, budget, w, dg, even, odd, out);
            if e > 0 {
                if d.is_odd() {
                    odd.pop();
                } else {
                    even.pop();
                }
            }
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.factors()
            .iter()
            .map(|&(g, e, _)| {
                let name = &self.gens[g as usize].name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Canonical text: terms in descending monomial order, coefficients as
    /// reduced fractions, e.g. `x^2*y - 1/2*x + 1`.
    pub fn format(&self, a: &Element) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in a.terms().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            let body = if m.is_one() {
                mag.to_string()
            } else if mag.is_one() {
                self.format_monomial(m)
            } else {
                format!("{mag}*{}", self.format_monomial(m))
            };
            match (k, negative) {
                (0, false) => s.push_str(&body),
                (0, true) => {
                    s.push('-');
                    s.push_str(&body);
                }
                (_, false) => {
                    s.push_str(" + ");
                    s.push_str(&body);
                }
                (_, true) => {
                    s.push_str(" - ");
                    s.push_str(&body);
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K[x] with e, d e = x^2, and f, d f = x e (so d(d f) = x^3 != 0).
    fn sample() -> (SemifreeAlgebra, GenId, GenId, GenId) {
        let mut a = SemifreeAlgebra::new();
        let x = a.add_generator("x", 0, 0, Element::zero()).unwrap();
        let e = a.add_generator("e", -1, 0, a.var(x).pow(2)).unwrap();
        let f = a.add_generator("f", -2, 0, a.var(x).mul(&a.var(e))).unwrap();
        (a, x, e, f)
    }

    #[test]
    fn weights_follow_differentials() {
        let (a, x, e, f) = sample();
        assert_eq!(a.generator(x).weight, 1);
        assert_eq!(a.generator(e).weight, 2);
        assert_eq!(a.generator(f).weight, 3);
    }

    #[test]
    fn d_squared_detects_failure() {
        let (a, _, _, f) = sample();
        let bad = a.check_d_squared();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].0, f);
        assert_eq!(a.format(&bad[0].1), "x^3");
    }

    #[test]
    fn canonical_text() {
        let (a, x, _, _) = sample();
        let p = a.var(x).pow(2).scaled(&Q::new(-3, 2)).add(&Element::constant(Q::one()));
        assert_eq!(a.format(&p), "-3/2*x^2 + 1");
    }

    #[test]
    fn slice_respects_degree_and_weight() {
        let (a, x, e, f) = sample();
        let s = a.slice(&[x, e, f], -1, 4);
        let text: Vec<_> = s.iter().map(|m| a.format_monomial(m)).collect();
        assert_eq!(text, vec!["e", "x*e", "x^2*e"]);
        assert_eq!(a.slice(&[x, e, f], -2, 3), vec![a.monomial(f)]);
    }

    #[test]
    fn rejects_bad_degree() {
        let mut a = SemifreeAlgebra::new();
        let x = a.add_generator("x", 0, 0, Element::zero()).unwrap();
        let err = a.add_generator("e", -2, 0, a.var(x)).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { expected: -1, found: 0, .. }));
    }
}
