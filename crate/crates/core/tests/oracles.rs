//! Library results against independent computations written here from
//! first principles.

mod common;

use common::*;
use proptest::prelude::*;
use resolvent_core::diagram::build_resolvent;
use resolvent_core::exactla::{kernel_basis, rref, Echelon, RationalMatrix};
use resolvent_core::parse::parse_scheme;
use resolvent_core::tangent::{first_order_classes, tangent_cohomology, DerComplex};
use resolvent_core::window::TruncationWindow;
use resolvent_core::Q;

/// Rank by fraction-free elimination over the integers.
fn bareiss_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

/// Rank over Q by plain Gaussian elimination on dense rows.
fn gauss_rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let f = &rows[r][c] / &rows[rank][c];
            let pivot = rows[rank].clone();
            for (x, p) in rows[r][c..].iter_mut().zip(&pivot[c..]) {
                *x = &*x - &(&f * p);
            }
        }
        rank += 1;
    }
    rank
}

fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

/// Matrices wide enough for the sparse elimination path, mostly zero.
fn wide_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 64usize..72).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -3i64..=3], c), r)
    })
}

proptest! {
    #![proptest_config(config(0x5eed_0004))]

    #[test]
    fn sparse_path_rank_and_kernel(m in wide_matrix()) {
        let q = RationalMatrix::from_dense(&to_q(&m));
        let rank = bareiss_rank(&m);
        prop_assert_eq!(q.rank(), rank);
        let k = kernel_basis(&q);
        prop_assert_eq!(k.dim() + rank, q.cols());
        for v in k.dense_basis() {
            prop_assert!(q.mul_vec(&v).iter().all(Q::is_zero));
        }
    }

    #[test]
    fn rank_matches_integer_elimination(m in matrix()) {
        let q = RationalMatrix::from_dense(&to_q(&m));
        prop_assert_eq!(q.rank(), bareiss_rank(&m));
    }

    #[test]
    fn rref_is_reduced_and_row_equivalent(m in matrix()) {
        let q = RationalMatrix::from_dense(&to_q(&m));
        let (red, pivots, rank) = rref(&q);
        prop_assert_eq!(pivots.len(), rank);
        prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (i, &p) in pivots.iter().enumerate() {
            for r in 0..q.rows() {
                let expected = if r == i { Q::one() } else { Q::zero() };
                prop_assert_eq!(red.get(r, p), expected);
            }
            for c in 0..p {
                prop_assert!(red.get(i, c).is_zero());
            }
        }
        // same row space: stacking does not raise the rank
        let mut stacked = to_q(&m);
        stacked.extend(red.to_dense().into_iter().take(rank));
        prop_assert_eq!(gauss_rank(stacked), rank);
    }

    #[test]
    fn kernel_is_annihilated_and_complementary(m in matrix()) {
        let q = RationalMatrix::from_dense(&to_q(&m));
        let k = kernel_basis(&q);
        prop_assert_eq!(k.dim() + bareiss_rank(&m), q.cols());
        for v in k.dense_basis() {
            prop_assert!(q.mul_vec(&v).iter().all(Q::is_zero));
        }
        prop_assert_eq!(gauss_rank(k.dense_basis()), k.dim());
    }

    #[test]
    fn incremental_echelon_agrees_with_dense(m in matrix()) {
        let q = RationalMatrix::from_dense(&to_q(&m));
        let mut e = Echelon::new();
        for r in 0..q.rows() {
            e.insert(q.row(r));
        }
        prop_assert_eq!(e.rank(), q.rank());
        let (red, _, rank) = rref(&q);
        let rows: Vec<_> = (0..rank).map(|r| red.row(r)).collect();
        prop_assert_eq!(e.into_rref(), rows);
    }
}

/// Two-chart Čech complex of the tangent sheaf of the projective line.
///
/// Sections are `a(x)∂x` on `U0`, `b(y)∂y` on `U1` and Laurent fields
/// `c(x)∂x` on the overlap, where `y = 1/x` and `∂y = −x²∂x`. Cochains are
/// truncated to polynomial degree `n` on the charts and the Laurent range
/// `[2 − n, n]` that the coboundary reaches.
fn cech_p1(n: i64) -> (usize, usize) {
    let lo = 2 - n;
    let width = (n - lo + 1) as usize;
    let idx = |k: i64| (k - lo) as usize;
    let mut columns: Vec<Vec<Q>> = Vec::new();
    for j in 0..=n {
        // (x^j ∂x, 0) restricts to −x^j ∂x
        let mut col = vec![Q::zero(); width];
        col[idx(j)] = -Q::one();
        columns.push(col);
    }
    for j in 0..=n {
        // (0, y^j ∂y) restricts to y^j ∂y = −x^{2−j} ∂x
        let mut col = vec![Q::zero(); width];
        col[idx(2 - j)] = -Q::one();
        columns.push(col);
    }
    let rank = gauss_rank(columns.clone());
    (columns.len() - rank, width - rank)
}

#[test]
fn projective_line_tangent_cohomology_matches_cech() {
    let (h0, h1) = cech_p1(6);
    assert_eq!((h0, h1), (3, 0));
    let s = parse_scheme(&fixture("p1.json")).unwrap();
    let w = TruncationWindow::new(6, 2, -2, 0).unwrap();
    let r = build_resolvent(&s, &w).unwrap().resolvent;
    let w = TruncationWindow::new(6, 2, 0, 2).unwrap();
    let t: Vec<_> = (0..=2).map(|i| tangent_cohomology(&r, i, &w).unwrap()).collect();
    assert!(t.iter().all(|h| h.stable));
    assert_eq!(t[0].dim, h0);
    assert_eq!(t[1].dim, h1);
    // the two-chart Čech complex has no second cochains
    assert_eq!(t[2].dim, 0);
}

/// Monomials `x^a y^b` with `a + b <= n`.
fn monomials(n: u32) -> Vec<(u32, u32)> {
    (0..=n).flat_map(|d| (0..=d).map(move |a| (a, d - a))).collect()
}

/// `dim K[x, y] / (gens)` by windowed linear algebra: the span of
/// `g·m` with `deg(g·m) <= n` against all monomials of degree `<= n`.
fn quotient_dimension(gens: &[Vec<((u32, u32), i64)>], n: u32) -> usize {
    let basis = monomials(n);
    let pos = |m: (u32, u32)| basis.iter().position(|&b| b == m);
    let mut rows = Vec::new();
    for g in gens {
        let deg = g.iter().map(|((a, b), _)| a + b).max().unwrap_or(0);
        for &(ma, mb) in &monomials(n.saturating_sub(deg)) {
            let mut row = vec![Q::zero(); basis.len()];
            for &((a, b), c) in g {
                row[pos((a + ma, b + mb)).expect("in window")] += &Q::from_int(c);
            }
            rows.push(row);
        }
    }
    basis.len() - gauss_rank(rows)
}

#[test]
fn cusp_first_order_space_matches_jacobian_ring() {
    // y² − x³ together with its partials 2y and −3x²
    let gens = vec![vec![((0, 2), 1), ((3, 0), -1)], vec![((0, 1), 2)], vec![((2, 0), -3)]];
    let oracle = quotient_dimension(&gens, 8);
    assert_eq!(oracle, quotient_dimension(&gens, 6));
    assert_eq!(oracle, 2);
    let s = parse_scheme(&fixture("cusp_affine.json")).unwrap();
    let w = TruncationWindow::new(8, 2, -2, 0).unwrap();
    let r = build_resolvent(&s, &w).unwrap().resolvent;
    let w = TruncationWindow::new(8, 2, 0, 2).unwrap();
    let t1 = tangent_cohomology(&r, 1, &w).unwrap();
    assert!(t1.stable);
    assert_eq!(t1.dim, oracle);
    let count = first_order_classes(&DerComplex::of_resolvent(&r), &w);
    assert_eq!(count.classes, oracle);
}
