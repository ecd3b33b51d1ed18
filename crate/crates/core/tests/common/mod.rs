//! Random test data over a small semifree algebra with generators in
//! degrees 0, -1, -2 and -3.
//!
//! The algebra is `K[x, y, z] ⟨e1, e2, u, v⟩` with `de1 = f1`, `de2 = f2`,
//! `du = f2·e1 − f1·e2` and `dv = e1·e2 + u`, which squares to zero for any
//! polynomials `f1, f2`.

#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use resolvent_core::gca::{Element, GenId, SemifreeAlgebra};
use resolvent_core::tangent::DiagramDerivation;
use resolvent_core::Q;

pub const X: GenId = 0;
pub const E1: GenId = 3;
pub const E2: GenId = 4;
pub const U: GenId = 5;
pub const V: GenId = 6;

pub fn config(seed: u64) -> Config {
    Config { cases: 256, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

pub fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// One term of a random element: a coefficient, exponents of `x, y, z`
/// and a selector among the ways to reach the requested degree with
/// `u`, `e1`, `e2`, `v`.
#[derive(Clone, Debug)]
pub struct Term {
    pub coef: i64,
    pub xyz: [u32; 3],
    pub pick: usize,
}

pub fn term() -> impl Strategy<Value = Term> {
    (-3i64..=3, [0u32..3, 0u32..3, 0u32..2], 0usize..16).prop_map(|(coef, xyz, pick)| Term { coef, xyz, pick })
}

pub fn terms(max: usize) -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(term(), 0..=max)
}

/// Polynomials `f1, f2` for the toy differential; kept small.
pub fn relations() -> impl Strategy<Value = (Vec<Term>, Vec<Term>)> {
    (terms(3), terms(3))
}

fn power(alg: &SemifreeAlgebra, g: GenId, k: u32) -> Element {
    if k == 0 {
        Element::one()
    } else {
        alg.var(g).pow(k)
    }
}

/// Ways to write `degree` as `−2k − (e1 + e2 + 3v)` with `k <= 2`.
fn shapes(degree: i32) -> Vec<(u32, [bool; 3])> {
    let mut out = Vec::new();
    for k in 0..=2u32 {
        for mask in 0..8u8 {
            let odd = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
            let d = -2 * k as i32 - odd[0] as i32 - odd[1] as i32 - 3 * odd[2] as i32;
            if d == degree {
                out.push((k, odd));
            }
        }
    }
    out
}

/// Homogeneous element of the given degree built from the terms.
pub fn homogeneous(alg: &SemifreeAlgebra, degree: i32, ts: &[Term]) -> Element {
    let options = shapes(degree);
    let mut out = Element::zero();
    if options.is_empty() {
        return out;
    }
    for t in ts {
        let (k, odd) = options[t.pick % options.len()];
        let mut e = Element::constant(Q::from_int(t.coef));
        for (g, &a) in t.xyz.iter().enumerate() {
            e = e.mul(&power(alg, g as GenId, a));
        }
        e = e.mul(&power(alg, U, k));
        for (g, on) in [E1, E2, V].into_iter().zip(odd) {
            if on {
                e = e.mul(&alg.var(g));
            }
        }
        out = out.add(&e);
    }
    out
}

pub fn toy_algebra(f1: &[Term], f2: &[Term]) -> SemifreeAlgebra {
    let mut alg = SemifreeAlgebra::new();
    for name in ["x", "y", "z"] {
        alg.add_generator(name, 0, 0, Element::zero()).unwrap();
    }
    let p1 = homogeneous(&alg, 0, f1);
    let p2 = homogeneous(&alg, 0, f2);
    alg.add_generator("e1", -1, 0, p1.clone()).unwrap();
    alg.add_generator("e2", -1, 0, p2.clone()).unwrap();
    let du = p2.mul(&alg.var(E1)).sub(&p1.mul(&alg.var(E2)));
    alg.add_generator("u", -2, 0, du).unwrap();
    let dv = alg.var(E1).mul(&alg.var(E2)).add(&alg.var(U));
    alg.add_generator("v", -3, 0, dv).unwrap();
    alg
}

/// Derivation of degree `i` with one random value per generator.
pub fn derivation(alg: &SemifreeAlgebra, i: i32, values: &[Vec<Term>]) -> DiagramDerivation {
    let mut theta = DiagramDerivation::zero(i);
    for (g, ts) in values.iter().enumerate().take(alg.len()) {
        let target = alg.generator(g as GenId).degree + i;
        theta.set(g as GenId, homogeneous(alg, target, ts));
    }
    theta
}

pub fn derivation_values() -> impl Strategy<Value = Vec<Vec<Term>>> {
    prop::collection::vec(terms(2), 7)
}

pub fn sign(k: i32) -> Q {
    if k.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}
