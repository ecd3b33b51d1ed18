use std::collections::BTreeMap;

use super::monomial::Monomial;
use crate::rational::Q;

/// A finite linear combination of monomials with nonzero rational
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Q>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one() -> Element {
        Element::constant(Q::one())
    }

    pub fn constant(q: Q) -> Element {
        Element::term(Monomial::one(), q)
    }

    pub fn term(m: Monomial, q: Q) -> Element {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        Element { terms }
    }

    pub fn from_monomial(m: Monomial) -> Element {
        Element::term(m, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// The common degree of all terms, `None` for zero or inhomogeneous
    /// elements.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn add_term(&mut self, m: Monomial, q: &Q) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + q;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Q, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (m, q) in &other.terms {
            self.add_term(m.clone(), &(c * q));
        }
    }

    pub fn scaled(&self, c: &Q) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, q)| (m.clone(), c * q)).collect() }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn neg(&self) -> Element {
        self.scaled(&-Q::one())
    }

    /// `c * m * self` with the Koszul sign of placing `m` on the left.
    pub fn mul_monomial_left(&self, m: &Monomial, c: &Q) -> Element {
        let mut out = Element::zero();
        for (n, q) in &self.terms {
            if let Some((neg, p)) = m.mul(n) {
                let v = c * q;
                out.add_term(p, &if neg { -v } else { v });
            }
        }
        out
    }

    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                if let Some((neg, m)) = a.mul(b) {
                    let v = p * q;
                    out.add_term(m, &if neg { -v } else { v });
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut out = Element::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, q)| (m.clone(), q.clone())).collect() }
    }
}

impl FromIterator<(Monomial, Q)> for Element {
    fn from_iter<I: IntoIterator<Item = (Monomial, Q)>>(iter: I) -> Element {
        let mut e = Element::zero();
        for (m, q) in iter {
            e.add_term(m, &q);
        }
        e
    }
}
