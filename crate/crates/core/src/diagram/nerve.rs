use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of a cell in its nerve; cells are sorted by degree, then
/// lexicographically.
pub type CellId = usize;

/// The poset of nonempty chart intersections, graded by cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nerve {
    charts: Vec<usize>,
    cells: Vec<Vec<usize>>,
}

fn subsets(charts: &[usize]) -> Vec<Vec<usize>> {
    assert!(charts.len() < 20, "too many charts");
    let mut out: Vec<Vec<usize>> = (1u32..1 << charts.len())
        .map(|mask| (0..charts.len()).filter(|k| mask & (1 << k) != 0).map(|k| charts[k]).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn label_of(cell: &[usize]) -> String {
    if cell.iter().all(|&c| c < 10) {
        cell.iter().map(|c| c.to_string()).collect()
    } else {
        cell.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("-")
    }
}

impl Nerve {
    /// Keeps the subsets flagged by `nonempty`, which must be downward
    /// closed.
    pub fn build(charts: &[usize], nonempty: impl Fn(&[usize]) -> bool) -> Result<Nerve> {
        let mut charts = charts.to_vec();
        charts.sort_unstable();
        charts.dedup();
        let cells: Vec<Vec<usize>> = subsets(&charts).into_iter().filter(|s| s.len() == 1 || nonempty(s)).collect();
        Nerve::from_cells(&charts, cells)
    }

    pub fn from_cells(charts: &[usize], cells: Vec<Vec<usize>>) -> Result<Nerve> {
        let mut charts = charts.to_vec();
        charts.sort_unstable();
        charts.dedup();
        let mut cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        for &c in &charts {
            if !cells.contains(&vec![c]) {
                cells.push(vec![c]);
            }
        }
        cells.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        cells.dedup();
        for cell in &cells {
            if let Some(&c) = cell.iter().find(|c| !charts.contains(c)) {
                return Err(Error::Validation(format!("cell {} uses unknown chart {c}", label_of(cell))));
            }
            for face in subsets(cell) {
                if face.len() < cell.len() && !cells.contains(&face) {
                    return Err(Error::InconsistentNerve { cell: label_of(cell), face: label_of(&face) });
                }
            }
        }
        Ok(Nerve { charts, cells })
    }

    pub fn charts(&self) -> &[usize] {
        &self.charts
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &[usize] {
        &self.cells[id]
    }

    pub fn find(&self, cell: &[usize]) -> Option<CellId> {
        let mut c = cell.to_vec();
        c.sort_unstable();
        self.cells.iter().position(|x| *x == c)
    }

    pub fn degree(&self, id: CellId) -> usize {
        self.cells[id].len()
    }

    /// Compact name used in generator names, e.g. `01`.
    pub fn label(&self, id: CellId) -> String {
        label_of(&self.cells[id])
    }

    /// Set notation used in reports, e.g. `{0,1}`.
    pub fn display(&self, id: CellId) -> String {
        format!("{{{}}}", self.cells[id].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
    }

    pub fn leq(&self, a: CellId, b: CellId) -> bool {
        self.cells[a].iter().all(|c| self.cells[b].contains(c))
    }

    /// All cells `γ <= α`, in nerve order.
    pub fn below(&self, alpha: CellId) -> Vec<CellId> {
        (0..self.cells.len()).filter(|&g| self.leq(g, alpha)).collect()
    }

    /// Codimension-one faces of `α`.
    pub fn faces(&self, alpha: CellId) -> Vec<CellId> {
        self.below(alpha).into_iter().filter(|&g| self.degree(g) + 1 == self.degree(alpha)).collect()
    }

    /// Every pair `γ ⊂ α` with `|α| = |γ| + 1`.
    pub fn covering_pairs(&self) -> Vec<(CellId, CellId)> {
        (0..self.cells.len()).flat_map(|a| self.faces(a).into_iter().map(move |g| (g, a))).collect()
    }

    /// The chain from `γ` to `α` adding the missing charts in increasing
    /// order.
    pub fn canonical_chain(&self, gamma: CellId, alpha: CellId) -> Vec<CellId> {
        assert!(self.leq(gamma, alpha), "not an inclusion");
        let mut chain = vec![gamma];
        let mut cur = self.cells[gamma].clone();
        for &c in &self.cells[alpha] {
            if !cur.contains(&c) {
                cur.push(c);
                cur.sort_unstable();
                chain.push(self.find(&cur).expect("nerve is downward closed"));
            }
        }
        chain
    }
}
