//! Worked examples for covers, chart diagrams and resolvents.

mod common;

use common::fixture;
use resolvent_core::diagram::{
    build_resolvent, check_resolvent, homology_dimension, latching_algebra, tate_extend, AlgebraComplex, Nerve, Resolvent,
    TargetDiagram,
};
use resolvent_core::gca::{Element, SemifreeAlgebra};
use resolvent_core::parse::{parse_polynomial, parse_resolvent, parse_scheme};
use resolvent_core::window::TruncationWindow;
use resolvent_core::Error;

fn window(d: u32, m: u32) -> TruncationWindow {
    TruncationWindow::new(d, m, -2, 0).unwrap()
}

fn p1() -> (TargetDiagram, Resolvent) {
    let s = parse_scheme(&fixture("p1.json")).unwrap();
    let r = build_resolvent(&s, &window(8, 2)).unwrap().resolvent;
    (s, r)
}

fn poly(alg: &SemifreeAlgebra, text: &str) -> Element {
    parse_polynomial(text, alg).unwrap()
}

fn names(alg: &SemifreeAlgebra) -> Vec<String> {
    alg.generators().iter().map(|g| g.name.clone()).collect()
}

#[test]
fn nerve_of_two_overlapping_charts() {
    let n = Nerve::build(&[0, 1], |_| true).unwrap();
    assert_eq!(n.cells(), &[vec![0], vec![1], vec![0, 1]]);
}

#[test]
fn nerve_omits_empty_intersections() {
    let n = Nerve::build(&[0, 1, 2], |c| !(c.contains(&0) && c.contains(&2))).unwrap();
    assert_eq!(n.cells(), &[vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]]);
    for (g, a) in n.covering_pairs() {
        assert!(n.degree(g) < n.degree(a));
    }
}

#[test]
fn nerve_with_a_triple_overlap_but_missing_pair_is_rejected() {
    let err = Nerve::build(&[0, 1, 2], |c| c != [0, 2]).unwrap_err();
    assert!(matches!(err, Error::InconsistentNerve { .. }), "{err:?}");
}

#[test]
fn single_chart_is_the_affine_case() {
    let n = Nerve::build(&[0], |_| true).unwrap();
    assert_eq!(n.cells(), &[vec![0]]);
}

#[test]
fn fixture_diagrams_validate() {
    for name in ["p1.json", "cuspidal_cubic.json", "cusp_affine.json"] {
        let s = parse_scheme(&fixture(name)).unwrap();
        let report = s.validate(2);
        assert!(report.passed, "{name}: {:?}", report.issues);
    }
}

#[test]
fn cusp_with_wrong_restriction_fails_validation() {
    let text = fixture("cuspidal_cubic.json").replace("\"y\": \"t^3\"", "\"y\": \"t^2\"");
    let s = parse_scheme(&text).unwrap();
    let report = s.validate(2);
    assert!(!report.passed);
    assert!(report.issues.iter().any(|i| i.to == "{0,1}"), "{:?}", report.issues);
}

#[test]
fn latching_algebra_of_the_overlap() {
    let (_, r) = p1();
    let overlap = r.nerve().find(&[0, 1]).unwrap();
    let l = latching_algebra(&r, overlap);
    assert_eq!(names(&l), ["x", "y"]);
    assert!(l.check_d_squared().is_empty());
    assert!((0..l.len() as u32).all(|g| l.differential_of(g).is_zero()));
    assert!(latching_algebra(&r, 0).is_empty());
}

#[test]
fn latching_algebra_of_cusp_overlap() {
    let (_, r) = parse_resolvent(&fixture("cuspidal_cubic_resolvent.json")).unwrap();
    let overlap = r.nerve().find(&[0, 1]).unwrap();
    let l = latching_algebra(&r, overlap);
    let mut got = names(&l);
    got.sort();
    assert_eq!(got, ["e1", "w", "x", "y"]);
    let e1 = l.find("e1").unwrap();
    assert_eq!(l.format(l.differential_of(e1)), l.format(&poly(&l, "y^2 - x^3")));
}

#[test]
fn overlap_of_projective_line_has_no_higher_homology() {
    let (_, r) = p1();
    let overlap = r.nerve().find(&[0, 1]).unwrap();
    let cx = AlgebraComplex::new(r.algebra(), r.generators_upto(overlap));
    let (dim, _) = homology_dimension(&cx, -1, &TruncationWindow::new(6, 2, -2, 0).unwrap()).unwrap();
    assert_eq!(dim, 0);
}

#[test]
fn polynomial_ring_without_odd_generators_has_no_negative_homology() {
    let mut alg = SemifreeAlgebra::new();
    alg.add_generator("x", 0, 0, Element::zero()).unwrap();
    let cx = AlgebraComplex::new(&alg, vec![0]);
    let w = TruncationWindow::new(5, 2, -2, 0).unwrap();
    assert_eq!(homology_dimension(&cx, -1, &w).unwrap_or((0, true)).0, 0);
}

fn single_chart(variables: &str, relation: &str) -> TargetDiagram {
    let text = format!(r#"{{"charts": [{{"id": 0, "variables": {variables}, "relations": ["{relation}"]}}]}}"#);
    parse_scheme(&text).unwrap()
}

/// Degree-0 generators mapping onto the chart variables, nothing else.
fn polynomial_start(s: &TargetDiagram) -> Resolvent {
    let mut r = Resolvent::new(s.nerve().clone());
    for v in s.chart(0).variables() {
        let image = poly(s.chart(0).algebra(), v);
        r.add_generator(v, 0, 0, Element::zero(), image).unwrap();
    }
    r
}

#[test]
fn tate_step_kills_the_hyperbola_relation() {
    let s = single_chart(r#"["x", "y"]"#, "x*y - 1");
    let mut r = polynomial_start(&s);
    let added = tate_extend(&mut r, &s, 0, -1, &window(6, 2)).unwrap();
    assert_eq!(added.len(), 1);
    let alg = r.algebra();
    let d = alg.differential_of(added[0]);
    let expected = poly(alg, "x*y - 1");
    assert!(d == &expected || d == &expected.neg(), "{}", alg.format(d));
}

#[test]
fn tate_step_kills_the_cusp_relation() {
    let s = single_chart(r#"["x", "y"]"#, "y^2 - x^3");
    let mut r = polynomial_start(&s);
    let added = tate_extend(&mut r, &s, 0, -1, &window(8, 2)).unwrap();
    assert_eq!(added.len(), 1);
    let alg = r.algebra();
    let d = alg.differential_of(added[0]);
    let expected = poly(alg, "y^2 - x^3");
    assert!(d == &expected || d == &expected.neg(), "{}", alg.format(d));
    // nothing left to kill
    assert!(tate_extend(&mut r, &s, 0, -1, &window(8, 2)).unwrap().is_empty());
}

#[test]
fn projective_line_resolvent_shape() {
    let (s, r) = p1();
    let counts = r.counts();
    let overlap = r.nerve().find(&[0, 1]).unwrap();
    assert_eq!(counts.get(&(0, 0)), Some(&1));
    assert_eq!(counts.get(&(1, 0)), Some(&1));
    assert_eq!(counts.get(&(overlap, -1)), Some(&1));
    assert_eq!(r.algebra().len(), 3);
    let e = r.generators_at(overlap)[0];
    let alg = r.algebra();
    let expected = poly(alg, "x*y - 1");
    let d = alg.differential_of(e);
    assert!(d == &expected || d == &expected.neg());
    assert!(check_resolvent(&r, &s, &window(8, 2)).unwrap().passed);
}

#[test]
fn koszul_tower_of_a_double_point_stops_after_one_step() {
    let s = single_chart(r#"["x"]"#, "x^2");
    let build = build_resolvent(&s, &window(6, 2)).unwrap();
    let counts = build.resolvent.counts();
    assert_eq!(counts.get(&(0, -1)), Some(&1));
    assert_eq!(counts.get(&(0, -2)).copied().unwrap_or(0), 0);
    assert!(check_resolvent(&build.resolvent, &s, &window(6, 2)).unwrap().passed);
}

#[test]
fn built_resolvents_are_deterministic_and_pass_their_check() {
    for name in ["p1.json", "cusp_affine.json"] {
        let s = parse_scheme(&fixture(name)).unwrap();
        let a = build_resolvent(&s, &window(6, 2)).unwrap().resolvent;
        let b = build_resolvent(&s, &window(6, 2)).unwrap().resolvent;
        assert_eq!(names(a.algebra()), names(b.algebra()));
        for g in 0..a.algebra().len() as u32 {
            assert_eq!(a.algebra().differential_of(g), b.algebra().differential_of(g));
        }
        assert!(check_resolvent(&a, &s, &window(6, 2)).unwrap().passed, "{name}");
    }
}

#[test]
fn generators_of_a_cell_are_the_union_over_its_faces() {
    let (_, r) = parse_resolvent(&fixture("cuspidal_cubic_resolvent.json")).unwrap();
    let nerve = r.nerve();
    for a in 0..nerve.len() {
        let mut union: Vec<u32> = nerve.below(a).into_iter().flat_map(|g| r.generators_at(g)).collect();
        union.sort_unstable();
        assert_eq!(union, r.generators_upto(a));
        let latching = r.latching_generators(a);
        assert!(latching.iter().all(|g| r.generators_upto(a).contains(g)));
    }
}

#[test]
fn hand_written_cusp_resolvent_passes_with_enough_margin() {
    let (s, r) = parse_resolvent(&fixture("cuspidal_cubic_resolvent.json")).unwrap();
    let report = check_resolvent(&r, &s, &window(8, 6)).unwrap();
    assert!(report.passed, "{report:?}");
}

#[test]
fn cusp_overlap_augmentation_is_a_chain_map() {
    let (s, r) = parse_resolvent(&fixture("cuspidal_cubic_resolvent.json")).unwrap();
    let overlap = r.nerve().find(&[0, 1]).unwrap();
    let p = r.augmentation_at(&s, overlap);
    let chart = s.chart(overlap).algebra();
    assert_eq!(chart.format(p.image(r.algebra().find("x").unwrap())), "t^2");
    assert_eq!(chart.format(p.image(r.algebra().find("y").unwrap())), "t^3");
    assert_eq!(chart.format(p.image(r.algebra().find("h").unwrap())), "w^2");
    let cell = &check_resolvent(&r, &s, &window(6, 6)).unwrap().cells[overlap];
    assert!(cell.chain_map, "{:?}", cell.chain_map_issues);
}

#[test]
fn mutated_augmentation_breaks_the_chain_map() {
    let s = parse_scheme(&fixture("p1.json")).unwrap();
    let overlap = s.nerve().find(&[0, 1]).unwrap();
    let mut r = Resolvent::new(s.nerve().clone());
    let x = poly(s.chart(0).algebra(), "x");
    let y = poly(s.chart(1).algebra(), "y");
    r.add_generator("x", 0, 0, Element::zero(), x).unwrap();
    r.add_generator("y", 0, 1, Element::zero(), y).unwrap();
    let de = poly(r.algebra(), "x*y - 1");
    r.add_generator("e", -1, overlap, de, Element::one()).unwrap();
    let report = check_resolvent(&r, &s, &window(8, 2)).unwrap();
    assert!(!report.passed);
    assert!(!report.cells[overlap].chain_map);
}
