use serde::{Deserialize, Serialize};

use super::scheme::{json_error, poly, SchemeSpec};
use crate::diagram::{Resolvent, TargetDiagram};
use crate::error::{Error, Result};
use crate::gca::Element;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i32,
    #[serde(default = "zero_text")]
    pub differential: String,
    #[serde(default = "zero_text")]
    pub augmentation: String,
}

fn zero_text() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolventCellSpec {
    pub cell: Vec<usize>,
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolventSpec {
    pub cells: Vec<ResolventCellSpec>,
}

/// A scheme together with a resolvent of its chart diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolventFile {
    pub scheme: SchemeSpec,
    pub resolvent: ResolventSpec,
}

impl ResolventSpec {
    pub fn to_resolvent(&self, s: &TargetDiagram) -> Result<Resolvent> {
        let nerve = s.nerve();
        let mut order = Vec::new();
        for (k, c) in self.cells.iter().enumerate() {
            let Some(cell) = nerve.find(&c.cell) else {
                return Err(Error::semantic(format!("resolvent.cells[{k}].cell"), "not a cell of the nerve"));
            };
            order.push((cell, k));
        }
        order.sort_unstable();
        if order.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::semantic("resolvent.cells", "a cell is listed twice"));
        }
        let mut r = Resolvent::new(nerve.clone());
        for (cell, k) in order {
            for (j, g) in self.cells[k].generators.iter().enumerate() {
                let path = format!("resolvent.cells[{k}] (cell {}).generators[{j}]", nerve.display(cell));
                let d = poly(&g.differential, r.algebra(), &format!("{path}.differential"))?;
                let aug = if g.degree == 0 {
                    poly(&g.augmentation, s.chart(cell).algebra(), &format!("{path}.augmentation"))?
                } else {
                    let a = poly(&g.augmentation, s.chart(cell).algebra(), &format!("{path}.augmentation"))?;
                    if !a.is_zero() {
                        return Err(Error::semantic(format!("{path}.augmentation"), "negative-degree generators augment to 0"));
                    }
                    Element::zero()
                };
                r.add_generator(&g.name, g.degree, cell, d, aug).map_err(|e| Error::semantic(path, e.to_string()))?;
            }
        }
        Ok(r)
    }

    pub fn from_resolvent(r: &Resolvent, s: &TargetDiagram) -> ResolventSpec {
        let nerve = r.nerve();
        let alg = r.algebra();
        let cells = (0..nerve.len())
            .map(|cell| ResolventCellSpec {
                cell: nerve.cell(cell).to_vec(),
                generators: r
                    .generators_at(cell)
                    .into_iter()
                    .map(|g| {
                        let decl = alg.generator(g);
                        GeneratorSpec {
                            name: decl.name.clone(),
                            degree: decl.degree,
                            differential: alg.format(alg.differential_of(g)),
                            augmentation: s.chart(cell).algebra().format(r.own_augmentation(g)),
                        }
                    })
                    .collect(),
            })
            .collect();
        ResolventSpec { cells }
    }
}

impl ResolventFile {
    pub fn from_json(text: &str) -> Result<ResolventFile> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn load(&self) -> Result<(TargetDiagram, Resolvent)> {
        let s = self.scheme.to_diagram()?;
        let r = self.resolvent.to_resolvent(&s)?;
        Ok((s, r))
    }
}

/// Reads a resolvent file into the chart diagram and its resolvent.
pub fn parse_resolvent(text: &str) -> Result<(TargetDiagram, Resolvent)> {
    ResolventFile::from_json(text)?.load()
}
