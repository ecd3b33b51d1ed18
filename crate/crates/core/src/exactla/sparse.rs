use std::collections::{BTreeMap, HashMap};

use crate::rational::Q;

/// Sorted `(index, value)` pairs with no zero values.
pub type SparseVec = Vec<(usize, Q)>;

/// `v + c * w` for sorted sparse vectors.
pub fn axpy(v: &[(usize, Q)], c: &Q, w: &[(usize, Q)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j == w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, c * &w[j].1));
            j += 1;
        } else {
            let s = &v[i].1 + &(c * &w[j].1);
            if !s.is_zero() {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &mut SparseVec, c: &Q) {
    for (_, x) in v.iter_mut() {
        *x = &*x * c;
    }
}

/// Collects arbitrary `(index, value)` pairs into a sorted sparse vector,
/// summing duplicates and dropping zeros.
pub fn normalize(pairs: impl IntoIterator<Item = (usize, Q)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
    for (i, q) in pairs {
        if q.is_zero() {
            continue;
        }
        match acc.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &q;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
    acc.into_iter().collect()
}

/// Row echelon form built one vector at a time.
///
/// Every stored row has leading entry `1` at its pivot column and no two rows
/// share a pivot. Insertion only clears leading entries, so rows are echelon
/// but not reduced until [`Echelon::into_rref`].
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Clears leading entries until the leading column has no pivot.
    pub fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, coef)) = v.first().cloned() {
            match self.pivot_row.get(&c) {
                Some(&r) => v = axpy(&v, &-coef, &self.rows[r]),
                None => break,
            }
        }
        v
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce_full(&self, v: &[(usize, Q)]) -> SparseVec {
        let mut work: BTreeMap<usize, Q> = v.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((c, coef)) = work.pop_first() {
            match self.pivot_row.get(&c) {
                Some(&r) => {
                    for (j, x) in &self.rows[r][1..] {
                        let delta = &coef * x;
                        let e = work.entry(*j).or_insert_with(Q::zero);
                        *e = &*e - &delta;
                        if e.is_zero() {
                            work.remove(j);
                        }
                    }
                }
                None => out.push((c, coef)),
            }
        }
        out
    }

    /// Inserts `v`; returns the new pivot column, or `None` when `v` was
    /// already in the span.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let mut v = self.reduce_leading(v);
        let (c, lead) = v.first().cloned()?;
        if !lead.is_one() {
            scale(&mut v, &lead.recip());
        }
        self.pivot_row.insert(c, self.rows.len());
        self.rows.push(v);
        Some(c)
    }

    pub fn contains(&self, v: &[(usize, Q)]) -> bool {
        self.reduce_leading(v.to_vec()).is_empty()
    }

    /// The unique reduced row echelon basis, sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        let mut done = Echelon::new();
        // back-substitute from the last pivot upwards
        for r in order {
            let row = &self.rows[r];
            let mut reduced = vec![row[0].clone()];
            reduced.extend(done.reduce_full(&row[1..]));
            done.pivot_row.insert(reduced[0].0, done.rows.len());
            done.rows.push(reduced);
        }
        let mut rows = done.rows;
        rows.sort_by_key(|r| r[0].0);
        rows
    }
}
