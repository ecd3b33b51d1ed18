use serde::Serialize;

use crate::diagram::{build_resolvent, resolve_cell, CellId, Membership, Resolvent, TargetDiagram};
use crate::error::{Error, Result};
use crate::gca::{AlgebraMap, Element, GenId};
use crate::window::TruncationWindow;

/// Chart data of a morphism `f: X → Y` over a common nerve: row 0 is the
/// chart diagram of `Y`, row 1 that of `X`, and `comparison[α]` is the
/// pullback `S_{α,0} → S_{α,1}`.
#[derive(Clone, Debug)]
pub struct MorphismData {
    pub codomain: TargetDiagram,
    pub domain: TargetDiagram,
    pub comparison: Vec<AlgebraMap>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComparisonIssue {
    pub kind: String,
    pub cell: String,
    pub detail: String,
}

impl MorphismData {
    pub fn new(codomain: TargetDiagram, domain: TargetDiagram, comparison: Vec<AlgebraMap>) -> Result<MorphismData> {
        if codomain.nerve().cells() != domain.nerve().cells() {
            return Err(Error::Validation("domain and codomain covers have different nerves".into()));
        }
        if comparison.len() != codomain.nerve().len() {
            return Err(Error::DimensionMismatch { left: comparison.len(), right: codomain.nerve().len() });
        }
        for (a, f) in comparison.iter().enumerate() {
            if f.images().len() != codomain.chart(a).algebra().len() {
                return Err(Error::DimensionMismatch { left: f.images().len(), right: codomain.chart(a).algebra().len() });
            }
        }
        Ok(MorphismData { codomain, domain, comparison })
    }

    /// Comparison maps must send relations into relations and commute with
    /// restrictions, both modulo the domain relations.
    pub fn validate(&self, extra: u32) -> Vec<ComparisonIssue> {
        let nerve = self.codomain.nerve();
        let mut issues = Vec::new();
        for a in 0..nerve.len() {
            let target = self.domain.chart(a);
            for r in self.codomain.chart(a).relations() {
                let image = self.comparison[a].apply(r);
                if target.membership(&image, extra) != Membership::Member {
                    issues.push(ComparisonIssue {
                        kind: "relation".into(),
                        cell: nerve.display(a),
                        detail: format!("image {} of a relation is not in the ideal", target.algebra().format(&image)),
                    });
                }
            }
            for g in nerve.below(a) {
                if g == a {
                    continue;
                }
                let left = self.codomain.restriction(g, a).compose(&self.comparison[a]);
                let right = self.comparison[g].compose(&self.domain.restriction(g, a));
                for (v, (x, y)) in left.images().iter().zip(right.images()).enumerate() {
                    if target.membership(&x.sub(y), extra) != Membership::Member {
                        issues.push(ComparisonIssue {
                            kind: "square".into(),
                            cell: format!("{} -> {}", nerve.display(g), nerve.display(a)),
                            detail: format!("variable {} does not commute", self.codomain.chart(g).algebra().generator(v as GenId).name),
                        });
                    }
                }
            }
        }
        issues
    }
}

/// Resolvents of both rows with the comparison realized as a generator
/// inclusion: every generator of `R_{•,0}` reappears in `R_{•,1}` with
/// the same cell and differential.
#[derive(Clone, Debug)]
pub struct MorphismDiagram {
    pub data: MorphismData,
    pub base: Resolvent,
    pub total: Resolvent,
    /// row-0 generator id to its id in the row-1 algebra
    pub embedding: Vec<GenId>,
}

#[derive(Clone, Debug)]
pub struct MorphismBuild {
    pub diagram: MorphismDiagram,
    pub warnings: Vec<String>,
}

/// Builds `R_{•,0}` and then `R_{•,1}` cell by cell starting from the
/// pushout of the latching algebra with `R_{α,0}`, so the comparison is a
/// cofibration by construction.
pub fn build_morphism_resolvent(data: &MorphismData, window: &TruncationWindow) -> Result<MorphismBuild> {
    if let Some(issue) = data.validate(window.margin).first() {
        return Err(Error::Validation(format!("comparison {} check at {}: {}", issue.kind, issue.cell, issue.detail)));
    }
    let base_build = build_resolvent(&data.codomain, window)?;
    let base = base_build.resolvent;
    let mut warnings = base_build.warnings;
    let nerve = data.domain.nerve().clone();
    let mut total = Resolvent::new(nerve.clone());
    let mut embedding: Vec<GenId> = Vec::with_capacity(base.algebra().len());
    for alpha in 0..nerve.len() {
        for g in base.generators_at(alpha) {
            let decl = base.algebra().generator(g);
            let rename = AlgebraMap::new(
                (0..base.algebra().len())
                    .map(|k| if k < embedding.len() { total.algebra().var(embedding[k]) } else { Element::zero() })
                    .collect(),
            );
            let d = rename.apply(base.algebra().differential_of(g));
            let aug = data.comparison[alpha].apply(base.own_augmentation(g));
            let id = total.add_generator(&decl.name, decl.degree, alpha, d, aug)?;
            embedding.push(id);
        }
        warnings.extend(resolve_cell(&mut total, &data.domain, alpha, window)?.into_iter().map(|w| format!("row 1 {w}")));
    }
    Ok(MorphismBuild { diagram: MorphismDiagram { data: data.clone(), base, total, embedding }, warnings })
}

impl MorphismDiagram {
    pub fn is_base(&self, g: GenId) -> bool {
        self.embedding.contains(&g)
    }

    /// Row-1 generators coming from row 0, attached at cells `<= α`.
    pub fn base_upto(&self, alpha: CellId) -> Vec<GenId> {
        let nerve = self.total.nerve();
        self.embedding.iter().copied().filter(|&g| nerve.leq(self.total.cell_of(g), alpha)).collect()
    }
}
