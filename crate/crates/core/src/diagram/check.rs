use rayon::prelude::*;
use serde::Serialize;

use super::homology::AlgebraComplex;
use super::nerve::CellId;
use super::resolvent::Resolvent;
use super::target::{Membership, TargetDiagram};
use crate::error::{Error, Result};
use crate::gca::GenId;
use crate::window::{cohomology, TruncationWindow};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomologyEntry {
    pub degree: i32,
    pub dim: usize,
    pub stable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellCheck {
    pub cell: String,
    /// (a) `p_α` commutes with the differentials
    pub chain_map: bool,
    pub chain_map_issues: Vec<String>,
    /// (b) `p_α` hits every monomial of the chart in the window
    pub surjective: bool,
    /// (c) the kernel of `p_α` in degree 0 consists of boundaries
    pub h0_matches: bool,
    /// (d) windowed homology of `R_α` in negative degrees
    pub homology: Vec<HomologyEntry>,
    /// (e) differentials stay in the cells below
    pub reedy: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolventCheck {
    pub window: TruncationWindow,
    pub d_squared: bool,
    pub cells: Vec<CellCheck>,
    pub passed: bool,
}

fn chain_map_issues(r: &Resolvent, s: &TargetDiagram, alpha: CellId, extra: u32) -> Vec<String> {
    let alg = r.algebra();
    let chart = s.chart(alpha);
    let p = r.augmentation_at(s, alpha);
    let mut issues = Vec::new();
    for g in r.generators_upto(alpha) {
        let decl = alg.generator(g);
        let image = p.image(g);
        if decl.degree < 0 && !image.is_zero() {
            issues.push(format!(
                "`{}` has degree {} but maps to {} of degree 0",
                decl.name,
                decl.degree,
                chart.algebra().format(image)
            ));
            continue;
        }
        if decl.degree == -1 {
            let pd = p.apply(alg.differential_of(g));
            match chart.membership(&pd, extra) {
                Membership::Member => {}
                Membership::NotMember => {
                    issues.push(format!("p(d {}) = {} is not in the relation ideal", decl.name, chart.algebra().format(&pd)))
                }
                Membership::Unverified => issues.push(format!(
                    "p(d {}) = {} not certified in the relation ideal within the window",
                    decl.name,
                    chart.algebra().format(&pd)
                )),
            }
        }
    }
    issues
}

fn reedy_ok(r: &Resolvent, alpha: CellId) -> bool {
    let alg = r.algebra();
    r.generators_at(alpha).iter().all(|&g| {
        alg.differential_of(g)
            .terms()
            .all(|(m, _)| m.generators().all(|h: GenId| r.nerve().leq(r.cell_of(h), alpha)))
    })
}

fn check_cell(r: &Resolvent, s: &TargetDiagram, alpha: CellId, window: &TruncationWindow) -> Result<CellCheck> {
    let issues = chain_map_issues(r, s, alpha, window.margin);
    let gens = r.generators_upto(alpha);
    let p = r.augmentation_at(s, alpha);
    let cx = AlgebraComplex::augmented(r.algebra(), gens, s.chart(alpha), &p);
    let degrees: Vec<i32> = (window.i_min..=1).collect();
    let results: Vec<Result<HomologyEntry>> = degrees
        .par_iter()
        .map(|&i| match cohomology(&cx, i, window) {
            Ok(h) => Ok(HomologyEntry { degree: i, dim: h.dim, stable: h.stable }),
            Err(Error::WindowTooSmall { .. }) => Ok(HomologyEntry { degree: i, dim: 0, stable: true }),
            Err(e) => Err(e),
        })
        .collect();
    let mut entries = results.into_iter().collect::<Result<Vec<_>>>()?;
    let h1 = entries.pop().expect("degree 1 computed");
    let h0 = entries.pop().expect("degree 0 computed");
    let chain_map = issues.is_empty();
    let surjective = h1.dim == 0;
    let h0_matches = h0.dim == 0;
    let reedy = reedy_ok(r, alpha);
    let acyclic = entries.iter().all(|e| e.dim == 0);
    Ok(CellCheck {
        cell: r.nerve().display(alpha),
        chain_map,
        chain_map_issues: issues,
        surjective,
        h0_matches,
        homology: entries,
        reedy,
        passed: chain_map && surjective && h0_matches && reedy && acyclic,
    })
}

/// Verifies that `r` resolves `s` within the window, cell by cell.
pub fn check_resolvent(r: &Resolvent, s: &TargetDiagram, window: &TruncationWindow) -> Result<ResolventCheck> {
    let d_squared = r.algebra().check_d_squared().is_empty();
    let cells = (0..r.nerve().len())
        .into_par_iter()
        .map(|a| check_cell(r, s, a, window))
        .collect::<Result<Vec<_>>>()?;
    let passed = d_squared && cells.iter().all(|c| c.passed);
    Ok(ResolventCheck { window: *window, d_squared, cells, passed })
}
