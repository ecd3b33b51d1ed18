use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::sparse::{Echelon, SparseVec};
use super::subspace::Subspace;
use crate::rational::Q;

/// Matrices narrower than this are reduced with a dense working copy.
pub const DENSE_COLUMN_LIMIT: usize = 64;

/// Sparse matrix over the rationals. No stored entry is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "entries_serde")]
    entries: BTreeMap<(usize, usize), Q>,
}

mod entries_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, usize), Q>, s: S) -> Result<S::Ok, S::Error> {
        let flat: Vec<(usize, usize, String)> = m.iter().map(|((r, c), q)| (*r, *c, q.to_string())).collect();
        flat.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, usize), Q>, D::Error> {
        let flat: Vec<(usize, usize, String)> = Vec::deserialize(d)?;
        flat.into_iter()
            .map(|(r, c, q)| q.parse().map(|q| ((r, c), q)).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> RationalMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = RationalMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, q) in row.iter().enumerate() {
                m.set(i, j, q.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[SparseVec]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, q) in row {
                m.set(i, *j, q.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, q: Q) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) outside {}x{}", self.rows, self.cols);
        if q.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), q);
        }
    }

    pub fn row(&self, r: usize) -> SparseVec {
        self.entries.range((r, 0)..(r + 1, 0)).map(|((_, c), q)| (*c, q.clone())).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![Q::zero(); self.cols]; self.rows];
        for ((r, c), q) in &self.entries {
            d[*r][*c] = q.clone();
        }
        d
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for ((r, c), q) in &self.entries {
            t.entries.insert((*c, *r), q.clone());
        }
        t
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Q::zero(); self.rows];
        for ((r, c), q) in &self.entries {
            out[*r] += &(q * &v[*c]);
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).2
    }
}

/// Reduced row echelon form: `(reduced, pivot columns, rank)`.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>, usize) {
    let rows = if m.cols < DENSE_COLUMN_LIMIT { dense_rref(m) } else { sparse_rref(m) };
    let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
    let rank = pivots.len();
    let mut out = RationalMatrix::zeros(m.rows, m.cols);
    for (i, row) in rows.iter().enumerate() {
        for (c, q) in row {
            out.entries.insert((i, *c), q.clone());
        }
    }
    (out, pivots, rank)
}

fn sparse_rref(m: &RationalMatrix) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in 0..m.rows {
        e.insert(m.row(r));
    }
    e.into_rref()
}

fn dense_rref(m: &RationalMatrix) -> Vec<SparseVec> {
    let mut a = m.to_dense();
    let mut lead_row = 0;
    for col in 0..m.cols {
        let Some(p) = (lead_row..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(lead_row, p);
        let inv = a[lead_row][col].recip();
        for x in a[lead_row].iter_mut() {
            *x = &*x * &inv;
        }
        let lead = a[lead_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == lead_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, l) in row[col..].iter_mut().zip(&lead[col..]) {
                if !l.is_zero() {
                    *x = &*x - &(&f * l);
                }
            }
        }
        lead_row += 1;
        if lead_row == m.rows {
            break;
        }
    }
    a.into_iter()
        .take(lead_row)
        .map(|row| row.into_iter().enumerate().filter(|(_, q)| !q.is_zero()).collect())
        .collect()
}

/// Basis of the null space `{v : m v = 0}` in normal form.
pub fn kernel_basis(m: &RationalMatrix) -> Subspace {
    let (reduced, pivots, _) = rref(m);
    let is_pivot: Vec<bool> = {
        let mut p = vec![false; m.cols];
        for &c in &pivots {
            p[c] = true;
        }
        p
    };
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v: SparseVec = vec![(free, Q::one())];
        for (i, &pc) in pivots.iter().enumerate() {
            let x = reduced.get(i, free);
            if !x.is_zero() {
                v.push((pc, -x));
            }
        }
        v.sort_by_key(|(c, _)| *c);
        vectors.push(v);
    }
    Subspace::from_vectors(m.cols, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn identity_is_reduced() {
        let (r, p, k) = rref(&RationalMatrix::identity(2));
        assert_eq!(r, RationalMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
        assert_eq!(k, 2);
    }

    #[test]
    fn proportional_rows() {
        let (r, p, k) = rref(&qm(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, qm(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
        assert_eq!(k, 1);
    }

    #[test]
    fn empty_matrix() {
        let (r, p, k) = rref(&RationalMatrix::zeros(0, 0));
        assert_eq!((r.rows(), p.len(), k), (0, 0, 0));
        assert_eq!(rref(&RationalMatrix::zeros(3, 100)).2, 0);
    }

    #[test]
    fn kernel_of_identity_and_single_relation() {
        assert_eq!(kernel_basis(&RationalMatrix::identity(4)).dim(), 0);
        let k = kernel_basis(&qm(&[&[1, 1]]));
        assert_eq!(k.basis(), &[vec![(0, Q::one()), (1, Q::from_int(-1))]]);
    }

    #[test]
    #[should_panic]
    fn out_of_range_index() {
        RationalMatrix::zeros(2, 2).set(2, 0, Q::one());
    }
}
