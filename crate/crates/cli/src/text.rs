//! Human-readable summaries. Every number printed here is read from the
//! report body that is serialized to JSON.

use std::fmt::Write;

use resolvent_core::window::TruncationWindow;

use crate::report::{CheckBody, CotangentBody, DeformBody, MorphismBody, NerveBody, ResolveBody, TangentBody, ValidateBody};

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn window(w: &TruncationWindow) -> String {
    format!("D={} m={} degrees {}:{}", w.weight, w.margin, w.i_min, w.i_max)
}

fn flag(stable: bool) -> &'static str {
    if stable {
        "stable"
    } else {
        "unstable"
    }
}

fn warnings(out: &mut String, ws: &[String]) {
    for w in ws {
        let _ = writeln!(out, "warning: {w}");
    }
}

pub fn validate(b: &ValidateBody, passed: bool) -> String {
    let mut out = format!("validate ({}): {}\n", b.kind, verdict(passed));
    for d in &b.diagrams {
        let _ = writeln!(out, "  {}: {} cells, {} issues", d.role, d.cells, d.issues.len());
        for i in &d.issues {
            let _ = writeln!(out, "    {} {} -> {} `{}`: residue {}", i.kind, i.from, i.to, i.generator, i.residue);
        }
    }
    for i in &b.comparison_issues {
        let _ = writeln!(out, "  comparison {} at {}: {}", i.kind, i.cell, i.detail);
    }
    out
}

pub fn nerve(b: &NerveBody) -> String {
    let mut out = format!("nerve: {} charts, {} cells\n", b.charts.len(), b.cells.len());
    for c in &b.cells {
        let _ = writeln!(out, "  {} degree {} faces [{}] vars [{}]", c.cell, c.degree, c.faces.join(" "), c.variables.join(" "));
        for r in &c.relations {
            let _ = writeln!(out, "    {r} = 0");
        }
    }
    out
}

pub fn resolve(b: &ResolveBody) -> String {
    let mut out = format!("resolve ({}): ", window(&b.window));
    let counts: Vec<String> = b.cells.iter().map(|c| format!("{}:{}", c.cell, c.generators)).collect();
    let _ = writeln!(out, "{}", counts.join(" "));
    for c in &b.resolvent.cells {
        for g in &c.generators {
            if g.differential != "0" {
                let _ = writeln!(out, "  d{} = {}", g.name, g.differential);
            }
        }
    }
    warnings(&mut out, &b.warnings);
    out
}

pub fn check(b: &CheckBody, passed: bool) -> String {
    let mut out = format!("check ({}, {} resolvent): {}\n", window(&b.check.window), b.source, verdict(passed));
    let _ = writeln!(out, "  d^2 = 0: {}", b.check.d_squared);
    for c in &b.check.cells {
        let homology: Vec<String> = c
            .homology
            .iter()
            .map(|h| format!("H^{}={}{}", h.degree, h.dim, if h.stable { "" } else { "?" }))
            .collect();
        let _ = writeln!(
            out,
            "  {}: chain map {}, surjective {}, H^0 {}, reedy {}, {} -> {}",
            c.cell,
            c.chain_map,
            c.surjective,
            c.h0_matches,
            c.reedy,
            homology.join(" "),
            verdict(c.passed)
        );
    }
    warnings(&mut out, &b.warnings);
    out
}

pub fn tangent(b: &TangentBody) -> String {
    let dims: Vec<String> = b.degrees.iter().map(|d| d.dim.to_string()).collect();
    let mut out = format!("tangent ({}): [{}]{}\n", window(&b.window), dims.join(", "), if b.certified { "" } else { " (not certified)" });
    for d in &b.degrees {
        let _ = writeln!(out, "  T^{} = {} ({}; {} cycles, {} boundaries)", d.degree, d.dim, flag(d.stable), d.cycles, d.boundaries);
        for r in &d.representatives {
            let _ = writeln!(out, "    {}", r.join(" + "));
        }
    }
    warnings(&mut out, &b.warnings);
    out
}

pub fn deform(b: &DeformBody, passed: bool) -> String {
    let mut out = format!("deform ({}, order {}): {}\n", window(&b.window), b.order, verdict(passed));
    let _ = writeln!(out, "  T^1 = {} ({}), T^2 = {} ({})", b.t1.dim, flag(b.t1.stable), b.t2.dim, flag(b.t2.stable));
    let f = &b.first_order;
    let _ = writeln!(out, "  first order: {} MC - {} gauge = {} classes", f.mc_dim, f.gauge_rank, f.classes);
    for (k, d) in b.directions.iter().enumerate() {
        let _ = writeln!(out, "  direction {k}: {} -> {} (order {})", d.representative.join(" + "), d.outcome, d.order);
        if !d.obstruction.is_empty() {
            let _ = writeln!(out, "    obstruction {}", d.obstruction.join(" + "));
        }
        if let Some(n) = &d.note {
            let _ = writeln!(out, "    {n}");
        }
    }
    warnings(&mut out, &b.warnings);
    out
}

pub fn cotangent(b: &CotangentBody, passed: bool) -> String {
    let mut out = format!("cotangent: {}\n", verdict(passed));
    let m = &b.module;
    let ranks: Vec<String> = m.ranks.iter().map(|(c, r)| format!("{c}:{r}")).collect();
    let _ = writeln!(out, "  module ranks {}; d^2 {}, chain maps {}, cocycle {}", ranks.join(" "), m.d_squared, m.chain_maps, m.cocycle);
    let _ = writeln!(out, "  quasi-coherence ({}):", window(&b.qcoh_window));
    for q in &b.qcoh {
        let dims: Vec<String> = q.homology.iter().map(|h| format!("{}{}", h.dim, if h.stable { "" } else { "?" })).collect();
        let _ = writeln!(out, "    {} -> {}: [{}] {}", q.from, q.to, dims.join(", "), verdict(q.quasi_isomorphism));
    }
    let c = &b.comparison;
    let _ = writeln!(out, "  comparison ({}): {}", window(&c.window), verdict(c.passed));
    for d in &c.degrees {
        let _ = writeln!(
            out,
            "    i={}: Der {} ({}), Hom {} ({})",
            d.degree,
            d.tangent,
            flag(d.tangent_stable),
            d.hom,
            flag(d.hom_stable)
        );
    }
    for d in &c.dictionary {
        let _ = writeln!(out, "    dictionary i={}: {} = {} basis, intertwines {}", d.degree, d.hom_basis, d.der_basis, d.intertwines);
    }
    warnings(&mut out, &b.warnings);
    out
}

pub fn morphism(b: &MorphismBody, passed: bool) -> String {
    let mut out = format!("morphism: {}\n", verdict(passed));
    for g in &b.generators {
        let _ = writeln!(out, "  row {} {} (degree {}, cell {}): d = {}", g.row, g.name, g.degree, g.cell, g.differential);
    }
    let _ = writeln!(out, "  codomain check {}, domain check {}", verdict(b.codomain_check.passed), verdict(b.domain_check.passed));
    let _ = writeln!(out, "  sequence ({}): {}", window(&b.sequence.window), verdict(b.sequence.passed));
    for d in &b.sequence.degrees {
        let _ = writeln!(
            out,
            "    i={}: pair {} base {} total {} mixed {}; kernel {} rank {}; exact {}",
            d.degree, d.pair, d.base, d.total, d.mixed, d.kernel, d.rank, d.exact
        );
    }
    let t = &b.tangent;
    for d in &t.degrees {
        let _ = writeln!(
            out,
            "  T^{}(f) = {}, T^{}(X) = {}, T^{}(Y) = {}, mixed {} ({})",
            d.degree,
            d.morphism,
            d.degree,
            d.domain,
            d.degree,
            d.codomain,
            d.mixed,
            flag(d.stable)
        );
    }
    let _ = writeln!(out, "  Euler sum {} (applicable {})", t.euler_sum, t.applicable);
    warnings(&mut out, &b.warnings);
    out
}
