use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::rational::Q;

/// Sparse vector over the basis of the maximal ideal.
pub type IdealVec = Vec<(usize, Q)>;

/// A local Artinian DG coefficient ring `K ⊕ 𝔪`, described by a basis of
/// `𝔪` with structure constants.
///
/// The basis must be adapted to the `𝔪`-adic filtration: each power
/// `𝔪^k` is spanned by the symbols of level `>= k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinCoefficient {
    pub symbols: Vec<String>,
    pub degrees: Vec<i32>,
    /// `products[a][b] = symbol_a · symbol_b`
    pub products: Vec<Vec<IdealVec>>,
    pub differential: Vec<IdealVec>,
    pub nilpotency: u32,
    levels: Vec<u32>,
}

fn add_into(acc: &mut [Q], v: &[(usize, Q)], c: &Q) {
    for (k, q) in v {
        acc[*k] = &acc[*k] + &(c * q);
    }
}

fn sparse(dense: Vec<Q>) -> IdealVec {
    dense.into_iter().enumerate().filter(|(_, q)| !q.is_zero()).collect()
}

impl ArtinCoefficient {
    pub fn new(
        symbols: Vec<String>,
        degrees: Vec<i32>,
        products: Vec<Vec<IdealVec>>,
        differential: Vec<IdealVec>,
        nilpotency: u32,
    ) -> Result<ArtinCoefficient> {
        let n = symbols.len();
        let bad = |m: &str| Err(Error::InvalidArtin(m.to_string()));
        if degrees.len() != n || products.len() != n || differential.len() != n || products.iter().any(|r| r.len() != n) {
            return bad("structure data does not match the symbol count");
        }
        if degrees.iter().any(|&d| d > 0) {
            return bad("symbols must have degree <= 0");
        }
        let in_range = |v: &IdealVec| v.iter().all(|(k, _)| *k < n);
        if !products.iter().flatten().all(in_range) || !differential.iter().all(in_range) {
            return bad("structure constant refers to an unknown symbol");
        }
        let mut ring = ArtinCoefficient { symbols, degrees, products, differential, nilpotency, levels: vec![0; n] };
        ring.check_laws()?;
        ring.levels = ring.compute_levels()?;
        Ok(ring)
    }

    /// `K[t]/(t^n)`, symbols `t, t^2, …, t^(n−1)` in degree 0.
    pub fn truncated_polynomial(n: u32) -> ArtinCoefficient {
        assert!(n >= 2, "K[t]/(t^n) needs n >= 2 for a nonzero maximal ideal");
        let k = (n - 1) as usize;
        let symbols = (1..=k).map(|e| if e == 1 { "t".to_string() } else { format!("t^{e}") }).collect();
        let products = (0..k)
            .map(|a| (0..k).map(|b| if a + b + 1 < k { vec![(a + b + 1, Q::one())] } else { Vec::new() }).collect())
            .collect();
        ArtinCoefficient::new(symbols, vec![0; k], products, vec![Vec::new(); k], n).expect("truncated polynomial ring")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn degree(&self, s: usize) -> i32 {
        self.degrees[s]
    }

    /// Largest `k` with the symbol in `𝔪^k`.
    pub fn level(&self, s: usize) -> u32 {
        self.levels[s]
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.iter().all(Vec::is_empty)
    }

    pub fn is_classical(&self) -> bool {
        self.has_zero_differential() && self.degrees.iter().all(|&d| d == 0)
    }

    pub fn mul(&self, a: &[(usize, Q)], b: &[(usize, Q)]) -> IdealVec {
        let mut acc = vec![Q::zero(); self.len()];
        for (x, p) in a {
            for (y, q) in b {
                add_into(&mut acc, &self.products[*x][*y], &(p * q));
            }
        }
        sparse(acc)
    }

    pub fn d(&self, a: &[(usize, Q)]) -> IdealVec {
        let mut acc = vec![Q::zero(); self.len()];
        for (x, p) in a {
            add_into(&mut acc, &self.differential[*x], p);
        }
        sparse(acc)
    }

    fn unit(s: usize) -> IdealVec {
        vec![(s, Q::one())]
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.len();
        let fail = |m: String| Err(Error::InvalidArtin(m));
        for a in 0..n {
            for b in 0..n {
                let ab = &self.products[a][b];
                if ab.iter().any(|(k, _)| self.degrees[*k] != self.degrees[a] + self.degrees[b]) {
                    return fail(format!("{}·{} is not homogeneous", self.symbols[a], self.symbols[b]));
                }
                let sign = if (self.degrees[a] * self.degrees[b]) % 2 != 0 { -Q::one() } else { Q::one() };
                let ba: IdealVec = self.products[b][a].iter().map(|(k, q)| (*k, &sign * q)).collect();
                if !sparse_eq(ab, &ba) {
                    return fail(format!("{}·{} is not graded commutative", self.symbols[a], self.symbols[b]));
                }
                for c in 0..n {
                    let left = self.mul(ab, &Self::unit(c));
                    let right = self.mul(&Self::unit(a), &self.products[b][c]);
                    if !sparse_eq(&left, &right) {
                        return fail(format!("product of {}, {}, {} is not associative", self.symbols[a], self.symbols[b], self.symbols[c]));
                    }
                }
                // d(ab) = da·b + (−1)^{|a|} a·db
                let lhs = self.d(ab);
                let mut rhs = vec![Q::zero(); n];
                add_into(&mut rhs, &self.mul(&self.differential[a], &Self::unit(b)), &Q::one());
                let s = if self.degrees[a] % 2 != 0 { -Q::one() } else { Q::one() };
                add_into(&mut rhs, &self.mul(&Self::unit(a), &self.differential[b]), &s);
                if !sparse_eq(&lhs, &sparse(rhs)) {
                    return fail(format!("Leibniz fails on {}·{}", self.symbols[a], self.symbols[b]));
                }
            }
            if self.differential[a].iter().any(|(k, _)| self.degrees[*k] != self.degrees[a] + 1) {
                return fail(format!("d{} has the wrong degree", self.symbols[a]));
            }
            if !self.d(&self.differential[a]).is_empty() {
                return fail(format!("d² {} is nonzero", self.symbols[a]));
            }
        }
        Ok(())
    }

    fn compute_levels(&self) -> Result<Vec<u32>> {
        let n = self.len();
        if n > 0 && self.nilpotency < 2 {
            return Err(Error::InvalidArtin(format!("𝔪 is nonzero but the nilpotency order is {}", self.nilpotency)));
        }
        let mut levels = vec![1u32; n];
        // symbols spanning 𝔪^(k−1)
        let mut power: Vec<IdealVec> = (0..n).map(Self::unit).collect();
        for k in 2.. {
            let next: Vec<IdealVec> = power
                .iter()
                .flat_map(|p| (0..n).map(move |s| (p, s)))
                .map(|(p, s)| self.mul(p, &Self::unit(s)))
                .filter(|v| !v.is_empty())
                .collect();
            let span = Subspace::from_vectors(n, next);
            let support: Vec<usize> = (0..n).filter(|&s| span.basis().iter().any(|b| b.iter().any(|(c, _)| *c == s))).collect();
            if support.is_empty() {
                return Ok(levels);
            }
            if support.len() != span.dim() {
                return Err(Error::InvalidArtin(format!("basis is not adapted to the power 𝔪^{k}")));
            }
            if k >= self.nilpotency {
                return Err(Error::InvalidArtin(format!("𝔪^{} is nonzero", self.nilpotency)));
            }
            for &s in &support {
                levels[s] = k;
            }
            power = support.iter().map(|&s| Self::unit(s)).collect();
        }
        unreachable!("the loop returns once the powers vanish")
    }
}

fn sparse_eq(a: &[(usize, Q)], b: &[(usize, Q)]) -> bool {
    let clean = |v: &[(usize, Q)]| {
        let mut v: Vec<(usize, Q)> = v.iter().filter(|(_, q)| !q.is_zero()).cloned().collect();
        v.sort_by_key(|e| e.0);
        v
    };
    clean(a) == clean(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_levels() {
        let a = ArtinCoefficient::truncated_polynomial(4);
        assert_eq!(a.symbols, vec!["t", "t^2", "t^3"]);
        assert_eq!((0..3).map(|s| a.level(s)).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(a.mul(&[(0, Q::one())], &[(1, Q::one())]), vec![(2, Q::one())]);
        assert!(a.mul(&[(1, Q::one())], &[(1, Q::one())]).is_empty());
    }

    #[test]
    fn dual_numbers() {
        let a = ArtinCoefficient::truncated_polynomial(2);
        assert_eq!(a.len(), 1);
        assert_eq!(a.level(0), 1);
    }

    #[test]
    fn rejects_wrong_nilpotency() {
        let products = vec![vec![vec![(1, Q::one())], vec![]], vec![vec![], vec![]]];
        let err = ArtinCoefficient::new(vec!["t".into(), "u".into()], vec![0, 0], products, vec![vec![], vec![]], 2);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_non_commutative() {
        let products = vec![vec![vec![], vec![(0, Q::one())]], vec![vec![], vec![]]];
        assert!(ArtinCoefficient::new(vec!["a".into(), "b".into()], vec![0, 0], products, vec![vec![], vec![]], 3).is_err());
    }
}
