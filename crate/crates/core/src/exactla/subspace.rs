use serde::{Deserialize, Serialize};

use super::sparse::{Echelon, SparseVec};
use crate::error::{Error, Result};
use crate::rational::Q;

/// A linear subspace of `Q^n`, stored by its reduced row echelon basis so that
/// equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { ambient, basis: (0..ambient).map(|i| vec![(i, Q::one())]).collect() }
    }

    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Subspace {
        let mut e = Echelon::new();
        for v in vectors {
            debug_assert!(v.iter().all(|(i, _)| *i < ambient));
            e.insert(v);
        }
        Subspace { ambient, basis: e.into_rref() }
    }

    pub fn from_dense(ambient: usize, vectors: &[Vec<Q>]) -> Subspace {
        Subspace::from_vectors(
            ambient,
            vectors.iter().map(|v| v.iter().cloned().enumerate().filter(|(_, q)| !q.is_zero()).collect()),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn dense_basis(&self) -> Vec<Vec<Q>> {
        self.basis
            .iter()
            .map(|v| {
                let mut d = vec![Q::zero(); self.ambient];
                for (i, q) in v {
                    d[*i] = q.clone();
                }
                d
            })
            .collect()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for v in &self.basis {
            e.insert(v.clone());
        }
        e
    }

    pub fn contains_vector(&self, v: &[(usize, Q)]) -> bool {
        self.echelon().contains(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        let e = other.echelon();
        self.ambient == other.ambient && self.basis.iter().all(|v| e.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_vectors(self.ambient, self.basis.iter().chain(&other.basis).cloned()))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }
}

/// `a ∩ b` by the Zassenhaus method: reduce the rows `[a_i | a_i]` and
/// `[b_j | 0]`; rows whose left half vanishes carry the intersection.
pub fn intersect_spans(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_ambient(b)?;
    let n = a.ambient;
    let mut e = Echelon::new();
    for v in &a.basis {
        let mut row = v.clone();
        row.extend(v.iter().map(|(i, q)| (i + n, q.clone())));
        e.insert(row);
    }
    for v in &b.basis {
        e.insert(v.clone());
    }
    let meet = e
        .rows()
        .iter()
        .filter(|r| r[0].0 >= n)
        .map(|r| r.iter().map(|(i, q)| (i - n, q.clone())).collect::<SparseVec>());
    Ok(Subspace::from_vectors(n, meet))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(i: usize) -> SparseVec {
        vec![(i, Q::one())]
    }

    #[test]
    fn normal_form_makes_equal_spans_equal() {
        let a = Subspace::from_vectors(3, [vec![(0, Q::one()), (1, Q::one())], unit(1)]);
        let b = Subspace::from_vectors(3, [unit(0), vec![(0, Q::from_int(2)), (1, Q::from_int(-3))]]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_idempotent_and_complementary() {
        let a = Subspace::from_vectors(4, [unit(0), vec![(1, Q::one()), (2, Q::one())]]);
        assert_eq!(intersect_spans(&a, &a).unwrap(), a);
        let x = Subspace::from_vectors(4, [unit(0), unit(1)]);
        let y = Subspace::from_vectors(4, [unit(2), unit(3)]);
        assert_eq!(intersect_spans(&x, &y).unwrap().dim(), 0);
    }

    #[test]
    fn mismatched_ambient() {
        assert!(matches!(
            intersect_spans(&Subspace::zero(2), &Subspace::zero(3)),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }
}
