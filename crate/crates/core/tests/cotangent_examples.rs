//! Worked examples for Kähler fibers, transition cones and the Hom-complex
//! comparison.

mod common;

use common::fixture;
use resolvent_core::cotangent::{
    compare_tangent, cotangent_module, dictionary_check, hom_complex, kaehler_fiber, qcoh_check, DerTargetComplex, TransitionCone,
};
use resolvent_core::diagram::{build_resolvent, Resolvent, TargetDiagram};
use resolvent_core::gca::GenId;
use resolvent_core::parse::{parse_resolvent, parse_scheme};
use resolvent_core::window::{cohomology, TruncationWindow, WindowedComplex};

fn built(name: &str) -> (TargetDiagram, Resolvent) {
    let s = parse_scheme(&fixture(name)).unwrap();
    let r = build_resolvent(&s, &TruncationWindow::new(8, 2, -2, 0).unwrap()).unwrap().resolvent;
    (s, r)
}

fn cusp() -> (TargetDiagram, Resolvent) {
    parse_resolvent(&fixture("cuspidal_cubic_resolvent.json")).unwrap()
}

fn gen(r: &Resolvent, name: &str) -> GenId {
    r.algebra().find(name).unwrap()
}

/// `∂(dh)` as sorted `coefficient·dg` strings.
fn boundary(r: &Resolvent, s: &TargetDiagram, cell: usize, h: GenId) -> Vec<String> {
    let f = kaehler_fiber(r, s, cell);
    let chart = s.chart(cell).algebra();
    let mut out: Vec<String> =
        f.differential_of(h).iter().map(|(g, c)| format!("({})d{}", chart.format(c), r.algebra().generator(*g).name)).collect();
    out.sort();
    out
}

#[test]
fn overlap_fiber_of_the_projective_line() {
    let (s, r) = built("p1.json");
    let overlap = r.nerve().find(&[0, 1]).unwrap();
    let f = kaehler_fiber(&r, &s, overlap);
    assert_eq!(f.rank(), 3);
    let e = r.generators_at(overlap)[0];
    let got = boundary(&r, &s, overlap, e);
    // `de` is `xy - 1` up to the normalization sign
    assert!(got == ["(x)dy", "(y)dx"] || got == ["(-x)dy", "(-y)dx"], "{got:?}");
}

#[test]
fn chart_fiber_is_free_of_rank_one() {
    let (s, r) = built("p1.json");
    let f = kaehler_fiber(&r, &s, 0);
    assert_eq!(f.rank(), 1);
    assert!(f.differential.is_empty());
}

#[test]
fn cusp_chart_fiber_differential() {
    let (s, r) = cusp();
    let got = boundary(&r, &s, 1, gen(&r, "e1"));
    assert_eq!(got, ["(-3*x^2)dx", "(2*y)dy"]);
}

#[test]
fn fiber_ranks() {
    let (s, r) = built("p1.json");
    let l = cotangent_module(&r, &s);
    assert_eq!(l.fibers.iter().map(|f| f.rank()).collect::<Vec<_>>(), [1, 1, 3]);
    let (s, r) = cusp();
    let l = cotangent_module(&r, &s);
    assert_eq!(l.fibers.iter().map(|f| f.rank()).collect::<Vec<_>>(), [1, 3, 9]);
}

#[test]
fn module_checks_pass_on_both_covers() {
    for (s, r) in [built("p1.json"), cusp()] {
        let report = cotangent_module(&r, &s).check(4);
        assert!(report.d_squared && report.chain_maps && report.cocycle, "{:?}", report.issues);
    }
}

#[test]
fn projective_line_transition_is_a_quasi_isomorphism() {
    let (s, r) = built("p1.json");
    let l = cotangent_module(&r, &s);
    let overlap = r.nerve().find(&[0, 1]).unwrap();
    let w = TruncationWindow::new(8, 2, -2, 0).unwrap();
    for chart in [0, 1] {
        let report = qcoh_check(&l, chart, overlap, &w).unwrap();
        assert!(report.quasi_isomorphism, "{report:?}");
        assert_eq!(report.homology.len(), 3);
    }
}

#[test]
fn cusp_transition_is_a_quasi_isomorphism() {
    let (s, r) = cusp();
    let l = cotangent_module(&r, &s);
    let overlap = r.nerve().find(&[0, 1]).unwrap();
    let report = qcoh_check(&l, 1, overlap, &TruncationWindow::new(8, 8, -2, 0).unwrap()).unwrap();
    assert!(report.quasi_isomorphism, "{report:?}");
}

#[test]
fn cone_of_an_identity_is_acyclic() {
    let (s, r) = cusp();
    let l = cotangent_module(&r, &s);
    let w = TruncationWindow::new(4, 2, -2, 0).unwrap();
    for cell in 0..r.nerve().len() {
        let cone = TransitionCone::new(&l, cell, cell).unwrap();
        for i in w.range() {
            let dim = cohomology(&cone, i, &w).map_or(0, |h| h.dim);
            assert_eq!(dim, 0, "cell {cell}, degree {i}");
        }
    }
}

#[test]
fn cone_needs_an_inclusion() {
    let (s, r) = built("p1.json");
    let l = cotangent_module(&r, &s);
    assert!(TransitionCone::new(&l, 0, 1).is_err());
}

#[test]
fn hom_and_derivations_into_the_charts_match_slot_for_slot() {
    for (s, r) in [built("p1.json"), cusp()] {
        let l = cotangent_module(&r, &s);
        let hom = hom_complex(&l);
        let der = DerTargetComplex::new(&r, &s);
        for i in -1..=2 {
            let d = dictionary_check(&hom, &der, i, 4);
            assert_eq!(d.hom_basis, d.der_basis);
            assert!(d.intertwines, "degree {i}");
        }
        assert_eq!(hom.basis(0, 4), der.basis(0, 4));
    }
}

#[test]
fn projective_line_comparison() {
    let (s, r) = built("p1.json");
    let report = compare_tangent(&r, &s, &TruncationWindow::new(6, 2, 0, 2).unwrap()).unwrap();
    let pairs: Vec<(usize, usize)> = report.degrees.iter().map(|d| (d.tangent, d.hom)).collect();
    assert_eq!(pairs, [(3, 3), (0, 0), (0, 0)]);
    assert!(report.passed);
}

#[test]
fn affine_cusp_comparison_in_degree_one() {
    let (s, r) = built("cusp_affine.json");
    let report = compare_tangent(&r, &s, &TruncationWindow::new(8, 2, 1, 1).unwrap()).unwrap();
    let d = &report.degrees[0];
    assert_eq!((d.tangent, d.hom), (2, 2));
    assert!(d.tangent_stable && d.hom_stable);
}

#[test]
fn affine_line_has_no_higher_tangent_cohomology() {
    let s = parse_scheme(r#"{"charts": [{"id": 0, "variables": ["x"], "relations": []}]}"#).unwrap();
    let r = build_resolvent(&s, &TruncationWindow::new(6, 2, -2, 0).unwrap()).unwrap().resolvent;
    let report = compare_tangent(&r, &s, &TruncationWindow::new(6, 2, 0, 2).unwrap()).unwrap();
    let zero = &report.degrees[0];
    assert_eq!(zero.tangent, zero.hom);
    for d in &report.degrees[1..] {
        assert_eq!((d.tangent, d.hom), (0, 0));
    }
}
