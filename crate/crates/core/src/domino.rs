//! Domino insertion of signed permutations into the staircase 2-core and the
//! partitions of `W_n` it induces.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cells::{CellKind, CellPartition, Provenance};
use crate::error::{Error, Result};
use crate::group::{ElemId, SignedPermutation, WeylGroup};

/// A `(row, column)` position, both zero-based.
pub type Cell = (usize, usize);

/// A Young diagram given by weakly decreasing positive row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ParameterOutOfRange(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Row lengths of a set of cells, which must form a Young diagram.
    fn from_cells<'a>(cells: impl IntoIterator<Item = &'a Cell>) -> Self {
        let mut rows: Vec<usize> = Vec::new();
        for &(r, _) in cells {
            if rows.len() <= r {
                rows.resize(r + 1, 0);
            }
            rows[r] += 1;
        }
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]) && !rows.contains(&0));
        Partition(rows)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn row(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of cells in column `j`.
    pub fn column(&self, j: usize) -> usize {
        self.0.iter().take_while(|&&p| p > j).count()
    }

    pub fn contains(&self, (r, c): Cell) -> bool {
        c < self.row(r)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }
}

/// The staircase `(r, r-1, ..., 1)`.
pub fn delta_core(r: usize) -> Partition {
    Partition((1..=r).rev().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Domino {
    pub label: usize,
    pub cells: [Cell; 2],
}

impl Domino {
    fn new(label: usize, mut cells: [Cell; 2]) -> Self {
        cells.sort();
        Domino { label, cells }
    }

    pub fn is_horizontal(&self) -> bool {
        self.cells[0].0 == self.cells[1].0
    }
}

/// A standard domino tableau of shape `shape / core`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominoTableau {
    core: Partition,
    shape: Partition,
    dominoes: Vec<Domino>,
}

impl DominoTableau {
    pub fn core(&self) -> &Partition {
        &self.core
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Dominoes ordered by label.
    pub fn dominoes(&self) -> &[Domino] {
        &self.dominoes
    }

    /// Core plus the dominoes with label at most `k` form a Young diagram, for
    /// every `k`, and the dominoes tile `shape / core`.
    pub fn is_standard(&self) -> bool {
        let mut cells: BTreeSet<Cell> = self.core.cells().collect();
        for (i, d) in self.dominoes.iter().enumerate() {
            let (a, b) = (d.cells[0], d.cells[1]);
            let adjacent = (a.0 == b.0 && a.1 + 1 == b.1) || (a.1 == b.1 && a.0 + 1 == b.0);
            if d.label != i + 1 || !adjacent || !cells.insert(a) || !cells.insert(b) {
                return false;
            }
            if !is_young(&cells) {
                return false;
            }
        }
        Partition::from_cells(cells.iter()) == self.shape
    }

    /// Text rendering: core cells as `.`, domino cells by label.
    pub fn to_ascii(&self) -> String {
        let mut grid: Vec<Vec<String>> =
            self.shape.parts().iter().map(|&len| vec![".".to_string(); len]).collect();
        for d in &self.dominoes {
            for (r, c) in d.cells {
                grid[r][c] = d.label.to_string();
            }
        }
        let width = self.dominoes.len().to_string().len();
        grid.iter()
            .map(|row| {
                row.iter().map(|s| format!("{s:>width$}")).collect::<Vec<_>>().join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for DominoTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

fn is_young(cells: &BTreeSet<Cell>) -> bool {
    cells.iter().all(|&(r, c)| {
        (r == 0 || cells.contains(&(r - 1, c))) && (c == 0 || cells.contains(&(r, c - 1)))
    })
}

fn shape_with(core: &Partition, dominoes: impl IntoIterator<Item = [Cell; 2]>) -> Partition {
    let mut rows = core.parts().to_vec();
    for cells in dominoes {
        for (r, _) in cells {
            if rows.len() <= r {
                rows.resize(r + 1, 0);
            }
            rows[r] += 1;
        }
    }
    Partition(rows)
}

/// The fourth cell of the 2×2 square spanned by three given cells.
fn complete_square(cells: [Cell; 3]) -> Cell {
    let rows: BTreeSet<usize> = cells.iter().map(|c| c.0).collect();
    let cols: BTreeSet<usize> = cells.iter().map(|c| c.1).collect();
    rows.iter()
        .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
        .find(|c| !cells.contains(c))
        .expect("three cells of a 2x2 square")
}

/// Inserts one signed value into a partial tableau indexed by label.
fn insert_value(core: &Partition, slots: &mut [Option<[Cell; 2]>], value: i32) {
    let k = value.unsigned_abs() as usize;
    let below = shape_with(core, slots[..k - 1].iter().flatten().copied());
    let placed = if value > 0 {
        let c = below.row(0);
        [(0, c), (0, c + 1)]
    } else {
        let r = below.column(0);
        [(r, 0), (r + 1, 0)]
    };
    slots[k - 1] = Some(placed);
    let mut grown = shape_with(&below, [placed]);
    let mut diff: [Cell; 2] = placed;
    for j in k..slots.len() {
        let Some(old) = slots[j] else { continue };
        let shared = old.iter().filter(|c| diff.contains(c)).count();
        let moved = match shared {
            0 => old,
            2 => {
                let (r, c) = old[0];
                if old[0].0 == old[1].0 {
                    let start = grown.row(r + 1);
                    [(r + 1, start), (r + 1, start + 1)]
                } else {
                    let start = grown.column(c + 1);
                    [(start, c + 1), (start + 1, c + 1)]
                }
            }
            _ => {
                let keep = *old.iter().find(|c| !diff.contains(c)).expect("one cell kept");
                let enter = *diff.iter().find(|c| !old.contains(c)).expect("one cell enters");
                let shared_cell = *old.iter().find(|c| diff.contains(c)).expect("shared");
                let corner = complete_square([keep, enter, shared_cell]);
                diff = [enter, corner];
                [keep, corner]
            }
        };
        if shared == 2 {
            diff = moved;
        }
        slots[j] = Some(moved);
        grown = shape_with(&grown, [moved]);
    }
}

/// The insertion tableau `D_r(w)`: the values `w(1), ..., w(n)` are inserted
/// in order into the core `δ_r`, positive values as horizontal dominoes and
/// negative values as vertical ones.
pub fn domino_insert(w: &SignedPermutation, r: usize) -> DominoTableau {
    let core = delta_core(r);
    let mut slots: Vec<Option<[Cell; 2]>> = vec![None; w.rank()];
    for &v in w.window() {
        insert_value(&core, &mut slots, v);
    }
    let dominoes: Vec<Domino> = slots
        .into_iter()
        .enumerate()
        .map(|(i, cells)| Domino::new(i + 1, cells.expect("every label inserted")))
        .collect();
    let shape = shape_with(&core, dominoes.iter().map(|d| d.cells));
    DominoTableau { core, shape, dominoes }
}

/// `sh_r(w)`, the shape of `D_r(w)`.
pub fn domino_shape(w: &SignedPermutation, r: usize) -> Partition {
    domino_insert(w, r).shape
}

/// Partition of `W_n` by equal insertion tableaux (right), equal tableaux of
/// inverses (left) or equal shapes (two-sided).
pub fn combinatorial_cells(group: &WeylGroup, r: usize, kind: CellKind) -> CellPartition {
    let provenance = Provenance::Combinatorial { descriptor: format!("domino r={r}") };
    let ids: Vec<ElemId> = group.ids().collect();
    let tableaux: Vec<(ElemId, DominoTableau)> = ids
        .par_iter()
        .map(|&x| {
            let w = match kind {
                CellKind::Left => group.element(group.inverse(x)),
                _ => group.element(x),
            };
            (x, domino_insert(w, r))
        })
        .collect();
    match kind {
        CellKind::TwoSided => CellPartition::from_labels(
            group,
            kind,
            provenance,
            tableaux.into_iter().map(|(x, t)| (x, t.shape)),
        ),
        _ => CellPartition::from_labels(group, kind, provenance, tableaux),
    }
}

/// The join of the partitions at `r - 1` and `r`.
pub fn approx_cells(group: &WeylGroup, r: usize, kind: CellKind) -> Result<CellPartition> {
    if r == 0 {
        return Err(Error::ParameterOutOfRange("the joined relation needs r >= 1".into()));
    }
    let lower = combinatorial_cells(group, r - 1, kind);
    let upper = combinatorial_cells(group, r, kind);
    lower.join(
        &upper,
        Provenance::Combinatorial { descriptor: format!("domino join r={},{r}", r - 1) },
    )
}
