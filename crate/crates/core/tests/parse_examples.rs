//! Input files: scheme, resolvent and morphism descriptions.

mod common;

use common::fixture;
use resolvent_core::diagram::build_resolvent;
use resolvent_core::parse::{parse_morphism, parse_polynomial, parse_resolvent, parse_scheme, ResolventFile, ResolventSpec, SchemeSpec};
use resolvent_core::window::TruncationWindow;
use resolvent_core::Error;

#[test]
fn projective_line_file() {
    let s = parse_scheme(&fixture("p1.json")).unwrap();
    assert_eq!(s.nerve().cells(), &[vec![0], vec![1], vec![0, 1]]);
    let overlap = s.chart(2);
    assert_eq!(overlap.variables(), ["x", "y"]);
    assert_eq!(overlap.algebra().format(&overlap.relations()[0]), "x*y - 1");
}

#[test]
fn cusp_file() {
    let s = parse_scheme(&fixture("cuspidal_cubic.json")).unwrap();
    assert_eq!(s.chart(1).algebra().format(&s.chart(1).relations()[0]), "-x^3 + y^2");
    let f = s.restriction(1, 2);
    let target = s.chart(2).algebra();
    let images: Vec<String> = f.images().iter().map(|e| target.format(e)).collect();
    assert_eq!(images, ["t^2", "t^3"]);
}

#[test]
fn undeclared_variable_names_the_generator_and_the_cell() {
    let text = fixture("p1.json").replace("x*y - 1", "x*y - z");
    let Err(Error::Semantic { path, message }) = parse_scheme(&text) else { panic!("expected a semantic error") };
    assert!(path.contains("{0,1}"), "{path}");
    assert!(message.contains("`z`"), "{message}");
}

#[test]
fn malformed_json_reports_a_position() {
    let text = "{\n  \"charts\": [\n    { \"id\": 0, \"variables\": [\"x\"], }\n  ]\n}";
    let Err(Error::Syntax { line, column, .. }) = parse_scheme(text) else { panic!("expected a syntax error") };
    assert_eq!(line, 3);
    assert!(column > 0);
}

#[test]
fn unknown_keys_are_rejected() {
    let text = r#"{"charts": [{"id": 0, "variables": ["x"], "relation": []}]}"#;
    assert!(parse_scheme(text).is_err());
}

#[test]
fn scheme_round_trip() {
    for name in ["p1.json", "cuspidal_cubic.json", "cusp_affine.json"] {
        let s = parse_scheme(&fixture(name)).unwrap();
        let spec = SchemeSpec::from_diagram(&s);
        let again = spec.to_diagram().unwrap();
        assert_eq!(SchemeSpec::from_diagram(&again), spec, "{name}");
    }
}

#[test]
fn emitted_resolvents_are_read_back_unchanged() {
    let s = parse_scheme(&fixture("p1.json")).unwrap();
    let r = build_resolvent(&s, &TruncationWindow::new(8, 2, -2, 0).unwrap()).unwrap().resolvent;
    let file = ResolventFile { scheme: SchemeSpec::from_diagram(&s), resolvent: ResolventSpec::from_resolvent(&r, &s) };
    let text = serde_json::to_string_pretty(&file).unwrap();
    let (s2, r2) = parse_resolvent(&text).unwrap();
    assert_eq!(ResolventSpec::from_resolvent(&r2, &s2), file.resolvent);
}

#[test]
fn polynomial_text_is_canonical_after_one_round() {
    let s = parse_scheme(&fixture("p1.json")).unwrap();
    let alg = s.chart(2).algebra();
    for text in ["(x + y)^3", "1/2*x - 3/4*y^2 + x*y", "x*(x*y - 1)", "0", "-y"] {
        let e = parse_polynomial(text, alg).unwrap();
        let printed = alg.format(&e);
        assert_eq!(parse_polynomial(&printed, alg).unwrap(), e);
        assert_eq!(alg.format(&parse_polynomial(&printed, alg).unwrap()), printed);
    }
}

#[test]
fn morphism_files() {
    for name in ["identity_p1.json", "double_cover.json", "line_to_point.json"] {
        let data = parse_morphism(&fixture(name)).unwrap();
        assert_eq!(data.codomain.nerve().cells(), data.domain.nerve().cells());
    }
    let text = fixture("double_cover.json").replace("x^2", "w");
    let Err(Error::Semantic { path, .. }) = parse_morphism(&text) else { panic!("expected a semantic error") };
    assert!(path.starts_with("comparison[0]"), "{path}");
}
