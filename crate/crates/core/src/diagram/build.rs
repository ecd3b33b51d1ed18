use super::homology::AlgebraComplex;
use super::nerve::CellId;
use super::resolvent::Resolvent;
use super::target::TargetDiagram;
use crate::error::{Error, Result};
use crate::gca::{Element, GenId};
use crate::window::{cohomology, TruncationWindow};

/// Upper bound on generators adjoined by a single Tate step.
pub const TATE_STEP_LIMIT: usize = 256;

#[derive(Clone, Debug)]
pub struct BuildOutcome {
    pub resolvent: Resolvent,
    /// Cells where homology below the window's range survived.
    pub warnings: Vec<String>,
}

/// Adjoins degree-`k` generators at `cell` until windowed `H^{k+1}` of the
/// augmented cell algebra vanishes. Each new generator kills the lowest
/// remaining class; classes are recomputed after every step because one
/// killer usually takes a whole submodule with it.
pub fn tate_extend(r: &mut Resolvent, s: &TargetDiagram, cell: CellId, k: i32, window: &TruncationWindow) -> Result<Vec<GenId>> {
    let mut added = Vec::new();
    let label = r.nerve().label(cell);
    loop {
        let gens = r.generators_upto(cell);
        let p = r.augmentation_at(s, cell);
        let cx = AlgebraComplex::augmented(r.algebra(), gens, s.chart(cell), &p);
        let h = match cohomology(&cx, k + 1, window) {
            Ok(h) => h,
            // nothing of this degree exists inside the window yet
            Err(Error::WindowTooSmall { .. }) => return Ok(added),
            Err(e) => return Err(e),
        };
        let Some(rep) = h.representatives.first() else {
            return Ok(added);
        };
        if added.len() == TATE_STEP_LIMIT {
            return Err(Error::InvalidWindow(format!(
                "Tate step at {} degree {k} did not terminate within {TATE_STEP_LIMIT} generators",
                r.nerve().display(cell)
            )));
        }
        let d: Element = rep.iter().cloned().collect();
        let name = format!("e{label}_{}_{}", -k, r.generators_at(cell).iter().filter(|&&g| r.algebra().generator(g).degree == k).count());
        added.push(r.add_generator(&name, k, cell, d, Element::zero())?);
    }
}

/// Builds a resolvent cell by cell in nerve order.
pub fn build_resolvent(s: &TargetDiagram, window: &TruncationWindow) -> Result<BuildOutcome> {
    let report = s.validate(window.margin);
    if !report.passed {
        let first = &report.issues[0];
        return Err(Error::Validation(format!(
            "{} check {} -> {} failed for {} (residue {})",
            first.kind, first.from, first.to, first.generator, first.residue
        )));
    }
    let mut r = Resolvent::new(s.nerve().clone());
    let mut warnings = Vec::new();
    for alpha in 0..s.nerve().len() {
        warnings.extend(resolve_cell(&mut r, s, alpha, window)?);
    }
    Ok(BuildOutcome { resolvent: r, warnings })
}

/// Completes `R_α` once the cells below are done: adjoins a degree-0
/// generator for each chart variable not already the image of a generator,
/// then runs Tate steps down to the window's lowest degree. Returns
/// warnings about homology left just below the range.
pub fn resolve_cell(r: &mut Resolvent, s: &TargetDiagram, alpha: CellId, window: &TruncationWindow) -> Result<Vec<String>> {
    let nerve = r.nerve().clone();
    let chart = s.chart(alpha);
    let p = r.augmentation_at(s, alpha);
    let below = r.generators_upto(alpha);
    for v in 0..chart.algebra().len() as GenId {
        let target = chart.algebra().var(v);
        if below.iter().any(|&g| *p.image(g) == target) {
            continue;
        }
        let base = &chart.algebra().generator(v).name;
        let name = if r.algebra().find(base).is_some() { format!("{base}_{}", nerve.label(alpha)) } else { base.clone() };
        r.add_generator(&name, 0, alpha, Element::zero(), target)?;
    }
    for k in (window.i_min - 1..=-1).rev() {
        tate_extend(r, s, alpha, k, window)?;
    }
    let gens = r.generators_upto(alpha);
    let p = r.augmentation_at(s, alpha);
    let cx = AlgebraComplex::augmented(r.algebra(), gens, s.chart(alpha), &p);
    let edge = window.i_min - 1;
    let mut warnings = Vec::new();
    if let Ok(h) = cohomology(&cx, edge, window) {
        if h.dim > 0 {
            warnings.push(format!("{}: H^{edge} has dimension {} beyond the window range", nerve.display(alpha), h.dim));
        }
    }
    Ok(warnings)
}
