use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::poly::parse_polynomial;
use crate::diagram::{ChartPresentation, Nerve, TargetDiagram};
use crate::error::{Error, Result};
use crate::gca::{AlgebraMap, Element, SemifreeAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub id: usize,
    pub variables: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionSpec {
    pub cell: Vec<usize>,
    pub variables: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    /// face, written like `0` or `0,1`, to variable images
    pub restrictions: BTreeMap<String, BTreeMap<String, String>>,
}

/// The scheme description file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSpec {
    pub charts: Vec<ChartSpec>,
    #[serde(default)]
    pub intersections: Vec<IntersectionSpec>,
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    if e.is_syntax() || e.is_eof() {
        Error::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
    } else {
        Error::Semantic { path: format!("line {}", e.line()), message: e.to_string() }
    }
}

pub(crate) fn poly(text: &str, alg: &SemifreeAlgebra, path: &str) -> Result<Element> {
    parse_polynomial(text, alg).map_err(|e| Error::semantic(path, e.to_string()))
}

fn face_key(cell: &[usize]) -> String {
    cell.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn presentation(variables: &[String], relations: &[String], path: &str) -> Result<ChartPresentation> {
    let names: Vec<&str> = variables.iter().map(String::as_str).collect();
    let mut chart = ChartPresentation::new(&names).map_err(|e| Error::semantic(format!("{path}.variables"), e.to_string()))?;
    for (k, r) in relations.iter().enumerate() {
        let rpath = format!("{path}.relations[{k}]");
        let e = poly(r, chart.algebra(), &rpath)?;
        chart.add_relation(e).map_err(|e| Error::semantic(rpath, e.to_string()))?;
    }
    Ok(chart)
}

impl SchemeSpec {
    pub fn from_json(text: &str) -> Result<SchemeSpec> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_diagram(&self) -> Result<TargetDiagram> {
        let ids: Vec<usize> = self.charts.iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ids.len() {
            return Err(Error::semantic("charts", "duplicate chart id"));
        }
        let cells: Vec<Vec<usize>> = self.intersections.iter().map(|i| i.cell.clone()).collect();
        let nerve = Nerve::from_cells(&ids, cells)?;
        let mut charts: Vec<Option<ChartPresentation>> = vec![None; nerve.len()];
        for (k, c) in self.charts.iter().enumerate() {
            let cell = nerve.find(&[c.id]).expect("charts are cells");
            charts[cell] = Some(presentation(&c.variables, &c.relations, &format!("charts[{k}] (cell {})", nerve.display(cell)))?);
        }
        for (k, i) in self.intersections.iter().enumerate() {
            let cell = nerve.find(&i.cell).expect("intersections are cells");
            let path = format!("intersections[{k}] (cell {})", nerve.display(cell));
            if nerve.degree(cell) < 2 {
                return Err(Error::semantic(format!("{path}.cell"), "an intersection needs at least two charts"));
            }
            if charts[cell].is_some() {
                return Err(Error::semantic(format!("{path}.cell"), format!("cell {} given twice", nerve.display(cell))));
            }
            charts[cell] = Some(presentation(&i.variables, &i.relations, &path)?);
        }
        let charts: Vec<ChartPresentation> = charts.into_iter().map(|c| c.expect("every cell described")).collect();
        let mut restrictions = BTreeMap::new();
        for (k, i) in self.intersections.iter().enumerate() {
            let alpha = nerve.find(&i.cell).expect("cell");
            for face in nerve.faces(alpha) {
                let key = face_key(nerve.cell(face));
                let path = format!("intersections[{k}].restrictions[{key}]");
                let Some(images) = i.restrictions.get(&key) else {
                    return Err(Error::semantic(path, "missing restriction map"));
                };
                let src = charts[face].algebra();
                if let Some(extra) = images.keys().find(|v| src.find(v).is_none()) {
                    return Err(Error::semantic(path, format!("`{extra}` is not a variable of {}", nerve.display(face))));
                }
                let mut imgs = Vec::new();
                for g in src.generators() {
                    let Some(text) = images.get(&g.name) else {
                        return Err(Error::semantic(&path, format!("no image for `{}`", g.name)));
                    };
                    imgs.push(poly(text, charts[alpha].algebra(), &format!("{path}.{}", g.name))?);
                }
                restrictions.insert((face, alpha), AlgebraMap::new(imgs));
            }
            if let Some(bad) = i.restrictions.keys().find(|k| !nerve.faces(alpha).iter().any(|&f| face_key(nerve.cell(f)) == **k)) {
                return Err(Error::semantic(format!("intersections[{k}].restrictions"), format!("`{bad}` is not a face of {}", nerve.display(alpha))));
            }
        }
        TargetDiagram::new(nerve, charts, restrictions)
    }

    /// The description of an existing diagram, in canonical form.
    pub fn from_diagram(s: &TargetDiagram) -> SchemeSpec {
        let nerve = s.nerve();
        let describe = |cell: usize| {
            let c = s.chart(cell);
            (
                c.variables().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                c.relations().iter().map(|r| c.algebra().format(r)).collect::<Vec<_>>(),
            )
        };
        let mut charts = Vec::new();
        let mut intersections = Vec::new();
        for cell in 0..nerve.len() {
            let (variables, relations) = describe(cell);
            if nerve.degree(cell) == 1 {
                charts.push(ChartSpec { id: nerve.cell(cell)[0], variables, relations });
                continue;
            }
            let mut restrictions = BTreeMap::new();
            for face in nerve.faces(cell) {
                let f = s.one_step(face, cell).expect("covering pair");
                let src = s.chart(face).algebra();
                let map = src
                    .generators()
                    .iter()
                    .enumerate()
                    .map(|(g, d)| (d.name.clone(), s.chart(cell).algebra().format(f.image(g as u32))))
                    .collect();
                restrictions.insert(face_key(nerve.cell(face)), map);
            }
            intersections.push(IntersectionSpec { cell: nerve.cell(cell).to_vec(), variables, relations, restrictions });
        }
        SchemeSpec { charts, intersections }
    }
}

/// Reads and validates a scheme description.
pub fn parse_scheme(text: &str) -> Result<TargetDiagram> {
    SchemeSpec::from_json(text)?.to_diagram()
}
