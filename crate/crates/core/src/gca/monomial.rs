use std::cmp::Ordering;

/// Index of a generator in its algebra's generator table; also its ordinal.
pub type GenId = u32;

/// A graded-commutative monomial in sign normal form.
///
/// Even generators carry exponents; odd generators appear at most once and
/// are listed in increasing ordinal. Degree and weight are cached so that
/// products never need the generator table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    weight: u32,
    degree: i32,
    even: Vec<(GenId, u32)>,
    odd: Vec<GenId>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { weight: 0, degree: 0, even: Vec::new(), odd: Vec::new() }
    }

    pub(crate) fn generator(id: GenId, degree: i32, weight: u32) -> Monomial {
        if degree % 2 != 0 {
            Monomial { weight, degree, even: Vec::new(), odd: vec![id] }
        } else {
            Monomial { weight, degree, even: vec![(id, 1)], odd: Vec::new() }
        }
    }

    pub(crate) fn from_parts(weight: u32, degree: i32, even: Vec<(GenId, u32)>, odd: Vec<GenId>) -> Monomial {
        debug_assert!(even.windows(2).all(|w| w[0].0 < w[1].0) && even.iter().all(|e| e.1 > 0));
        debug_assert!(odd.windows(2).all(|w| w[0] < w[1]));
        Monomial { weight, degree, even, odd }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn even_part(&self) -> &[(GenId, u32)] {
        &self.even
    }

    pub fn odd_part(&self) -> &[GenId] {
        &self.odd
    }

    /// Factors `(generator, exponent, odd?)` in ordinal order.
    pub fn factors(&self) -> Vec<(GenId, u32, bool)> {
        let mut out = Vec::with_capacity(self.even.len() + self.odd.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() || j < self.odd.len() {
            if j == self.odd.len() || (i < self.even.len() && self.even[i].0 < self.odd[j]) {
                out.push((self.even[i].0, self.even[i].1, false));
                i += 1;
            } else {
                out.push((self.odd[j], 1, true));
                j += 1;
            }
        }
        out
    }

    pub fn exponent(&self, g: GenId) -> u32 {
        if let Ok(k) = self.even.binary_search_by_key(&g, |e| e.0) {
            return self.even[k].1;
        }
        u32::from(self.odd.binary_search(&g).is_ok())
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> + '_ {
        self.even.iter().map(|e| e.0).chain(self.odd.iter().copied())
    }

    /// Product with its Koszul sign; `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() || j < other.odd.len() {
            if j == other.odd.len() || (i < self.odd.len() && self.odd[i] < other.odd[j]) {
                odd.push(self.odd[i]);
                i += 1;
            } else if i == self.odd.len() || other.odd[j] < self.odd[i] {
                // other.odd[j] jumps over the remaining odd factors of self
                if (self.odd.len() - i) % 2 == 1 {
                    negative = !negative;
                }
                odd.push(other.odd[j]);
                j += 1;
            } else {
                return None;
            }
        }
        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() || j < other.even.len() {
            if j == other.even.len() || (i < self.even.len() && self.even[i].0 < other.even[j].0) {
                even.push(self.even[i]);
                i += 1;
            } else if i == self.even.len() || other.even[j].0 < self.even[i].0 {
                even.push(other.even[j]);
                j += 1;
            } else {
                even.push((self.even[i].0, self.even[i].1 + other.even[j].1));
                i += 1;
                j += 1;
            }
        }
        Some((
            negative,
            Monomial { weight: self.weight + other.weight, degree: self.degree + other.degree, even, odd },
        ))
    }

    /// Splits off the factors strictly before and strictly after ordinal `g`.
    pub(crate) fn split_at(&self, g: GenId, weight_of: impl Fn(GenId) -> u32, degree_of: impl Fn(GenId) -> i32) -> (Monomial, Monomial) {
        let part = |even: Vec<(GenId, u32)>, odd: Vec<GenId>| {
            let weight = even.iter().map(|&(x, e)| weight_of(x) * e).sum::<u32>() + odd.iter().map(|&x| weight_of(x)).sum::<u32>();
            let degree = even.iter().map(|&(x, e)| degree_of(x) * e as i32).sum::<i32>() + odd.iter().map(|&x| degree_of(x)).sum::<i32>();
            Monomial { weight, degree, even, odd }
        };
        let before = part(
            self.even.iter().copied().filter(|e| e.0 < g).collect(),
            self.odd.iter().copied().filter(|&x| x < g).collect(),
        );
        let after = part(
            self.even.iter().copied().filter(|e| e.0 > g).collect(),
            self.odd.iter().copied().filter(|&x| x > g).collect(),
        );
        (before, after)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic: weight first, then the exponent vector read in
/// ordinal order.
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.weight.cmp(&other.weight).then_with(|| {
            let a = self.factors();
            let b = other.factors();
            for (x, y) in a.iter().zip(&b) {
                if x.0 != y.0 {
                    // the one with the smaller generator has a positive
                    // exponent where the other has zero
                    return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
                }
                if x.1 != y.1 {
                    return x.1.cmp(&y.1);
                }
            }
            a.len().cmp(&b.len())
        })
    }
}
