//! Cohomology of infinite-dimensional complexes computed in finite weight
//! windows.
//!
//! A complex exposes coordinates (basis vectors) graded by cohomological
//! degree and weight. In degree `i` at window `(D, m)`:
//!
//! * cycles `Z = {v in C_D : dv in J}`, where `J` is an optional relation
//!   span used when the complex takes values in a quotient ring;
//! * boundaries `B = (d(C^{i-1}_{D+m}) + J) ∩ C_D`;
//! * `H = Z / (Z ∩ B)`.
//!
//! Weight is a truncation device only; differentials may raise it.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Echelon, SparseVec};
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationWindow {
    /// weight bound `D`
    pub weight: u32,
    /// extra weight `m` allowed for boundaries and relation certificates
    pub margin: u32,
    pub i_min: i32,
    pub i_max: i32,
}

impl TruncationWindow {
    pub fn new(weight: u32, margin: u32, i_min: i32, i_max: i32) -> Result<TruncationWindow> {
        if weight < 1 {
            return Err(Error::InvalidWindow("weight bound must be at least 1".into()));
        }
        if i_min > i_max {
            return Err(Error::InvalidWindow(format!("empty degree range {i_min}:{i_max}")));
        }
        Ok(TruncationWindow { weight, margin, i_min, i_max })
    }

    pub fn with_weight(&self, weight: u32) -> TruncationWindow {
        TruncationWindow { weight, ..*self }
    }

    pub fn range(&self) -> std::ops::RangeInclusive<i32> {
        self.i_min..=self.i_max
    }
}

/// A cochain complex with a weight-graded coordinate basis in each degree.
pub trait WindowedComplex: Sync {
    type Coord: Clone + Ord + Hash + Eq + Send + Sync + Debug;

    fn weight(&self, c: &Self::Coord) -> u32;

    /// All coordinates of degree `i` and weight at most `max_weight`.
    fn basis(&self, i: i32, max_weight: u32) -> Vec<Self::Coord>;

    /// True when degree `i` has no coordinates at any weight.
    fn structurally_empty(&self, i: i32) -> bool;

    /// Image of a degree-`i` coordinate, in degree `i + 1` coordinates.
    fn differential(&self, i: i32, c: &Self::Coord) -> Vec<(Self::Coord, Q)>;

    /// Spanning set of the relation subspace in degree `i` up to the given
    /// weight. Empty for complexes over a free algebra.
    fn relations(&self, _i: i32, _max_weight: u32) -> Vec<Vec<(Self::Coord, Q)>> {
        Vec::new()
    }
}

/// A vector written in complex coordinates.
pub type Chain<C> = Vec<(C, Q)>;

#[derive(Clone, Debug)]
pub struct Cohomology<C> {
    pub degree: i32,
    pub weight: u32,
    pub margin: u32,
    pub dim: usize,
    pub cycles: usize,
    pub boundaries: usize,
    /// Reduced representatives of a basis of `H`, lowest weight first.
    pub representatives: Vec<Chain<C>>,
    /// The dimension agrees at weights `D` and `D - 1`.
    pub stable: bool,
}

/// Coordinates ordered heaviest first, so echelon pivots fall on the
/// heaviest entries and reduction leaves low-weight remainders.
struct Indexer<X: WindowedComplex + ?Sized> {
    coords: Vec<X::Coord>,
    index: HashMap<X::Coord, usize>,
}

impl<X: WindowedComplex + ?Sized> Indexer<X> {
    fn new(cx: &X, mut coords: Vec<X::Coord>) -> Self {
        coords.sort_by(|a, b| cx.weight(b).cmp(&cx.weight(a)).then_with(|| b.cmp(a)));
        coords.dedup();
        let index = coords.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        Indexer { coords, index }
    }

    fn vector(&self, chain: &[(X::Coord, Q)], offset: usize) -> SparseVec {
        let mut v: SparseVec = chain.iter().map(|(c, q)| (self.index[c] + offset, q.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    fn chain(&self, v: &[(usize, Q)]) -> Chain<X::Coord> {
        v.iter().map(|(k, q)| (self.coords[*k].clone(), q.clone())).collect()
    }
}

fn collect_chain<C: Ord + Clone>(pairs: impl IntoIterator<Item = (C, Q)>) -> Chain<C> {
    let mut acc: std::collections::BTreeMap<C, Q> = std::collections::BTreeMap::new();
    for (c, q) in pairs {
        let e = acc.entry(c).or_insert_with(Q::zero);
        *e = &*e + &q;
    }
    acc.into_iter().filter(|(_, q)| !q.is_zero()).collect()
}

/// Applies the differential to a chain of degree `i`.
pub fn apply<X: WindowedComplex + ?Sized>(cx: &X, i: i32, chain: &[(X::Coord, Q)]) -> Chain<X::Coord> {
    collect_chain(chain.iter().flat_map(|(c, q)| cx.differential(i, c).into_iter().map(move |(t, x)| (t, &x * q))))
}

fn images<X: WindowedComplex + ?Sized>(cx: &X, i: i32, src: &[X::Coord]) -> Vec<Chain<X::Coord>> {
    src.par_iter().map(|c| collect_chain(cx.differential(i, c))).collect()
}

fn max_weight<X: WindowedComplex + ?Sized>(cx: &X, chains: &[Chain<X::Coord>], floor: u32) -> u32 {
    chains.iter().flatten().map(|(c, _)| cx.weight(c)).max().unwrap_or(0).max(floor)
}

/// Cycles of degree `i` in weight `<= d`, as vectors over the returned
/// source indexer.
fn cycles<X: WindowedComplex + ?Sized>(cx: &X, i: i32, d: u32, margin: u32) -> (Indexer<X>, Vec<SparseVec>) {
    let src = Indexer::new(cx, cx.basis(i, d));
    let imgs = images(cx, i, &src.coords);
    let w = max_weight(cx, &imgs, d) + margin;
    let rels = if cx.structurally_empty(i + 1) { Vec::new() } else { cx.relations(i + 1, w) };
    let mut target: Vec<X::Coord> = imgs.iter().flatten().map(|(c, _)| c.clone()).collect();
    target.extend(rels.iter().flatten().map(|(c, _)| c.clone()));
    let tgt = Indexer::new(cx, target);
    let offset = tgt.coords.len();
    let mut e = Echelon::new();
    for r in &rels {
        e.insert(tgt.vector(r, 0));
    }
    for (k, img) in imgs.iter().enumerate() {
        let mut row = tgt.vector(img, 0);
        row.push((offset + k, Q::one()));
        e.insert(row);
    }
    let kernel = e
        .rows()
        .iter()
        .filter(|r| r[0].0 >= offset)
        .map(|r| r.iter().map(|(k, q)| (k - offset, q.clone())).collect())
        .collect();
    (src, kernel)
}

/// Boundaries landing in weight `<= d`, as an echelon over `src` indices.
fn boundaries<X: WindowedComplex + ?Sized>(cx: &X, i: i32, d: u32, margin: u32, src: &Indexer<X>) -> Echelon {
    let prev = if cx.structurally_empty(i - 1) { Vec::new() } else { cx.basis(i - 1, d + margin) };
    let imgs = images(cx, i - 1, &prev);
    let w = max_weight(cx, &imgs, d) + margin;
    let rels = cx.relations(i, w);
    let mut all: Vec<X::Coord> = src.coords.clone();
    all.extend(imgs.iter().flatten().map(|(c, _)| c.clone()));
    all.extend(rels.iter().flatten().map(|(c, _)| c.clone()));
    let ix = Indexer::new(cx, all);
    let mut e = Echelon::new();
    for chain in rels.iter().chain(&imgs) {
        e.insert(ix.vector(chain, 0));
    }
    let mut b = Echelon::new();
    for row in e.rows() {
        if cx.weight(&ix.coords[row[0].0]) <= d {
            let chain = ix.chain(row);
            b.insert(src.vector(&chain, 0));
        }
    }
    b
}

fn reduce_cycles(z: &[SparseVec], b: &Echelon) -> Vec<SparseVec> {
    let mut h = Echelon::new();
    for v in z {
        let r = b.reduce_full(v);
        if !r.is_empty() {
            h.insert(r);
        }
    }
    // combinations of reduced vectors stay reduced
    h.into_rref()
}

fn dimension_at<X: WindowedComplex + ?Sized>(cx: &X, i: i32, d: u32, margin: u32) -> usize {
    let (src, z) = cycles(cx, i, d, margin);
    let b = boundaries(cx, i, d, margin, &src);
    reduce_cycles(&z, &b).len()
}

/// Windowed `H^i`. Structurally empty degrees have dimension 0; a degree
/// that has coordinates but none of weight `<= D` is a window error.
pub fn cohomology<X: WindowedComplex + ?Sized>(cx: &X, i: i32, window: &TruncationWindow) -> Result<Cohomology<X::Coord>> {
    let (d, m) = (window.weight, window.margin);
    if cx.structurally_empty(i) {
        return Ok(Cohomology { degree: i, weight: d, margin: m, dim: 0, cycles: 0, boundaries: 0, representatives: Vec::new(), stable: true });
    }
    let ((src, z, b), lower) = rayon::join(
        || {
            let (src, z) = cycles(cx, i, d, m);
            let b = boundaries(cx, i, d, m, &src);
            (src, z, b)
        },
        || dimension_at(cx, i, d - 1, m),
    );
    if src.coords.is_empty() {
        return Err(Error::WindowTooSmall { degree: i, weight: d });
    }
    let reps = reduce_cycles(&z, &b);
    let mut representatives: Vec<Chain<X::Coord>> = reps.iter().map(|v| src.chain(v)).collect();
    for r in &mut representatives {
        r.sort_by(|a, b| cx.weight(&b.0).cmp(&cx.weight(&a.0)).then_with(|| b.0.cmp(&a.0)));
    }
    representatives.sort_by(|a, b| {
        let ka = (cx.weight(&a[0].0), &a[0].0);
        let kb = (cx.weight(&b[0].0), &b[0].0);
        ka.cmp(&kb)
    });
    Ok(Cohomology {
        degree: i,
        weight: d,
        margin: m,
        dim: representatives.len(),
        cycles: z.len(),
        boundaries: b.rank(),
        representatives,
        stable: lower == reps.len(),
    })
}

/// Least-weight solution `v` of degree `i` with `dv = target` (modulo the
/// relation span), searching sources of weight `<= max_weight`.
pub fn solve<X: WindowedComplex + ?Sized>(
    cx: &X,
    i: i32,
    target: &[(X::Coord, Q)],
    max_weight: u32,
    margin: u32,
) -> Option<Chain<X::Coord>> {
    if target.is_empty() {
        return Some(Vec::new());
    }
    let src = Indexer::new(cx, if cx.structurally_empty(i) { Vec::new() } else { cx.basis(i, max_weight) });
    let imgs = images(cx, i, &src.coords);
    let w = max_weight_of(cx, &imgs, target) + margin;
    let rels = cx.relations(i + 1, w);
    let mut coords: Vec<X::Coord> = imgs.iter().flatten().map(|(c, _)| c.clone()).collect();
    coords.extend(rels.iter().flatten().map(|(c, _)| c.clone()));
    coords.extend(target.iter().map(|(c, _)| c.clone()));
    let tgt = Indexer::new(cx, coords);
    let offset = tgt.coords.len();
    let mut e = Echelon::new();
    for r in &rels {
        e.insert(tgt.vector(r, 0));
    }
    for (k, img) in imgs.iter().enumerate() {
        let mut row = tgt.vector(img, 0);
        row.push((offset + k, Q::one()));
        e.insert(row);
    }
    let rem = e.reduce_full(&tgt.vector(target, 0));
    if rem.first().is_some_and(|(k, _)| *k < offset) {
        return None;
    }
    let v: SparseVec = rem.iter().map(|(k, q)| (k - offset, -q.clone())).collect();
    Some(src.chain(&v))
}

fn max_weight_of<X: WindowedComplex + ?Sized>(cx: &X, imgs: &[Chain<X::Coord>], target: &[(X::Coord, Q)]) -> u32 {
    max_weight(cx, imgs, target.iter().map(|(c, _)| cx.weight(c)).max().unwrap_or(0))
}

/// Matrix of the differential from the degree-`i` basis at weight `<= d`,
/// rows indexed by source coordinates in basis order.
pub fn differential_rows<X: WindowedComplex + ?Sized>(cx: &X, i: i32, d: u32) -> (Vec<X::Coord>, Vec<Chain<X::Coord>>) {
    let src = cx.basis(i, d);
    let imgs = images(cx, i, &src);
    (src, imgs)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `K[x] --(x - 1)--> K[x]` in degrees 0 and 1: multiplication by a
    /// non-homogeneous element, acyclic only up to window effects.
    struct Mult;

    impl WindowedComplex for Mult {
        type Coord = u32;
        fn weight(&self, c: &u32) -> u32 {
            *c
        }
        fn basis(&self, i: i32, w: u32) -> Vec<u32> {
            if i == 0 || i == 1 {
                (0..=w).collect()
            } else {
                Vec::new()
            }
        }
        fn structurally_empty(&self, i: i32) -> bool {
            !(i == 0 || i == 1)
        }
        fn differential(&self, i: i32, c: &u32) -> Vec<(u32, Q)> {
            if i == 0 {
                vec![(c + 1, Q::one()), (*c, -Q::one())]
            } else {
                Vec::new()
            }
        }
    }

    #[test]
    fn multiplication_complex() {
        let w = TruncationWindow::new(5, 1, 0, 1).unwrap();
        let h0 = cohomology(&Mult, 0, &w).unwrap();
        assert_eq!(h0.dim, 0);
        let h1 = cohomology(&Mult, 1, &w).unwrap();
        // K[x]/(x - 1) is one-dimensional, spanned by the constant
        assert_eq!(h1.dim, 1);
        assert!(h1.stable);
        assert_eq!(h1.representatives[0], vec![(0, Q::one())]);
        assert_eq!(cohomology(&Mult, 2, &w).unwrap().dim, 0);
    }

    #[test]
    fn solve_finds_preimage() {
        let v = solve(&Mult, 0, &[(2, Q::one()), (0, -Q::one())], 3, 1).unwrap();
        assert_eq!(apply(&Mult, 0, &v), vec![(0, -Q::one()), (2, Q::one())]);
        assert!(solve(&Mult, 0, &[(0, Q::one())], 3, 1).is_none());
    }
}
