use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::scheme::{json_error, poly, SchemeSpec};
use crate::error::{Error, Result};
use crate::gca::AlgebraMap;
use crate::morphisms::MorphismData;

/// Pullback along `f` on one cell: codomain variable to a polynomial in
/// the domain chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonSpec {
    pub cell: Vec<usize>,
    pub map: BTreeMap<String, String>,
}

/// The morphism description file for `f: X → Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    /// `Y`, row 0
    pub codomain: SchemeSpec,
    /// `X`, row 1
    pub domain: SchemeSpec,
    pub comparison: Vec<ComparisonSpec>,
}

impl MorphismSpec {
    pub fn from_json(text: &str) -> Result<MorphismSpec> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_data(&self) -> Result<MorphismData> {
        let codomain = self.codomain.to_diagram().map_err(|e| prefix("codomain", e))?;
        let domain = self.domain.to_diagram().map_err(|e| prefix("domain", e))?;
        let nerve = codomain.nerve();
        let mut maps: Vec<Option<AlgebraMap>> = vec![None; nerve.len()];
        for (k, c) in self.comparison.iter().enumerate() {
            let path = format!("comparison[{k}]");
            let Some(cell) = nerve.find(&c.cell) else {
                return Err(Error::semantic(format!("{path}.cell"), "not a cell of the codomain nerve"));
            };
            if maps[cell].is_some() {
                return Err(Error::semantic(format!("{path}.cell"), format!("cell {} given twice", nerve.display(cell))));
            }
            if cell >= domain.nerve().len() {
                return Err(Error::semantic(format!("{path}.cell"), "not a cell of the domain nerve"));
            }
            let src = codomain.chart(cell).algebra();
            if let Some(extra) = c.map.keys().find(|v| src.find(v).is_none()) {
                return Err(Error::semantic(format!("{path}.map"), format!("`{extra}` is not a codomain variable")));
            }
            let mut images = Vec::new();
            for g in src.generators() {
                let Some(text) = c.map.get(&g.name) else {
                    return Err(Error::semantic(format!("{path}.map"), format!("no image for `{}`", g.name)));
                };
                images.push(poly(text, domain.chart(cell).algebra(), &format!("{path}.map.{}", g.name))?);
            }
            maps[cell] = Some(AlgebraMap::new(images));
        }
        let mut comparison = Vec::with_capacity(maps.len());
        for (cell, m) in maps.into_iter().enumerate() {
            match m {
                Some(m) => comparison.push(m),
                None => return Err(Error::semantic("comparison", format!("no map for cell {}", nerve.display(cell)))),
            }
        }
        MorphismData::new(codomain, domain, comparison)
    }
}

fn prefix(what: &str, e: Error) -> Error {
    match e {
        Error::Semantic { path, message } => Error::Semantic { path: format!("{what}.{path}"), message },
        other => other,
    }
}

/// Reads a morphism description into its chart data.
pub fn parse_morphism(text: &str) -> Result<MorphismData> {
    MorphismSpec::from_json(text)?.to_data()
}
