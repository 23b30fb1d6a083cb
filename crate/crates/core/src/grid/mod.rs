//! Configurations of adjacent 2-minors on the integer grid.
//!
//! Coordinates follow matrix conventions: row 1 is the top row and rows grow
//! downward, column 1 is the leftmost column. A unit box anchored at `(i, j)`
//! stands for the adjacent minor `x[i,j]*x[i+1,j+1] - x[i,j+1]*x[i+1,j]`.

pub(crate) mod motif;
mod shape;
mod structure;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use motif::{detect_motifs, Motif, MotifKind, Symmetry};
pub use shape::{classify_shape, path_orderings, PathKind, PathShape};
pub use structure::{
    component_graph, connected_components, free_minors, is_chessboard, is_special, ComponentGraph,
};

/// A grid position `(row, col)`, both indices starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Result<Self> {
        if row == 0 || col == 0 {
            return Err(Error::InvalidCell {
                row: row as i64,
                col: col as i64,
            });
        }
        Ok(Cell { row, col })
    }

    /// Builds a cell from signed coordinates, rejecting anything below 1.
    pub fn from_signed(row: i64, col: i64) -> Result<Self> {
        if row < 1 || col < 1 || row > u32::MAX as i64 || col > u32::MAX as i64 {
            return Err(Error::InvalidCell { row, col });
        }
        Ok(Cell {
            row: row as u32,
            col: col as u32,
        })
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The adjacent 2-minor of the unit box whose top-left vertex is `anchor`.
///
/// Vertex names follow the usual picture of a box:
///
/// ```text
/// a b
/// c d
/// ```
///
/// so the minor is `ad - bc`, `ad` is its diagonal and `bc` its anti-diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UnitMinor {
    pub anchor: Cell,
}

impl UnitMinor {
    pub fn new(row: u32, col: u32) -> Result<Self> {
        Ok(UnitMinor {
            anchor: Cell::new(row, col)?,
        })
    }

    pub fn a(&self) -> Cell {
        self.anchor
    }

    pub fn b(&self) -> Cell {
        Cell {
            row: self.anchor.row,
            col: self.anchor.col + 1,
        }
    }

    pub fn c(&self) -> Cell {
        Cell {
            row: self.anchor.row + 1,
            col: self.anchor.col,
        }
    }

    pub fn d(&self) -> Cell {
        Cell {
            row: self.anchor.row + 1,
            col: self.anchor.col + 1,
        }
    }

    /// Vertices in the order `a, b, c, d`.
    pub fn vertices(&self) -> [Cell; 4] {
        [self.a(), self.b(), self.c(), self.d()]
    }

    /// The four edges: top, left, right, bottom.
    pub fn edges(&self) -> [[Cell; 2]; 4] {
        [
            [self.a(), self.b()],
            [self.a(), self.c()],
            [self.b(), self.d()],
            [self.c(), self.d()],
        ]
    }

    pub fn diagonal(&self) -> [Cell; 2] {
        [self.a(), self.d()]
    }

    pub fn anti_diagonal(&self) -> [Cell; 2] {
        [self.b(), self.c()]
    }

    pub fn has_vertex(&self, cell: Cell) -> bool {
        (cell.row == self.anchor.row || cell.row == self.anchor.row + 1)
            && (cell.col == self.anchor.col || cell.col == self.anchor.col + 1)
    }

    /// Number of grid vertices shared with `other` (0, 1, 2 or 4).
    pub fn shared_vertices(&self, other: &UnitMinor) -> usize {
        let dr = self.anchor.row.abs_diff(other.anchor.row);
        let dc = self.anchor.col.abs_diff(other.anchor.col);
        if dr > 1 || dc > 1 {
            0
        } else {
            ((2 - dr) * (2 - dc)) as usize
        }
    }

    pub fn shares_edge(&self, other: &UnitMinor) -> bool {
        self.shared_vertices(other) == 2
    }

    pub fn as_general(&self) -> GeneralMinor {
        GeneralMinor {
            row_lo: self.anchor.row,
            row_hi: self.anchor.row + 1,
            col_lo: self.anchor.col,
            col_hi: self.anchor.col + 1,
        }
    }
}

impl fmt::Display for UnitMinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}|{},{}]",
            self.anchor.row,
            self.anchor.row + 1,
            self.anchor.col,
            self.anchor.col + 1
        )
    }
}

/// The 2-minor `[row_lo,row_hi | col_lo,col_hi]`, i.e. the binomial
/// `x[row_lo,col_lo]*x[row_hi,col_hi] - x[row_lo,col_hi]*x[row_hi,col_lo]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneralMinor {
    pub row_lo: u32,
    pub row_hi: u32,
    pub col_lo: u32,
    pub col_hi: u32,
}

impl GeneralMinor {
    pub fn new(row_lo: u32, row_hi: u32, col_lo: u32, col_hi: u32) -> Result<Self> {
        if row_lo == 0 || col_lo == 0 || row_lo >= row_hi || col_lo >= col_hi {
            return Err(Error::Parse(format!(
                "invalid minor [{row_lo},{row_hi}|{col_lo},{col_hi}]"
            )));
        }
        Ok(GeneralMinor {
            row_lo,
            row_hi,
            col_lo,
            col_hi,
        })
    }

    /// Corner vertices in the order top-left, top-right, bottom-left, bottom-right.
    pub fn vertices(&self) -> [Cell; 4] {
        [
            Cell {
                row: self.row_lo,
                col: self.col_lo,
            },
            Cell {
                row: self.row_lo,
                col: self.col_hi,
            },
            Cell {
                row: self.row_hi,
                col: self.col_lo,
            },
            Cell {
                row: self.row_hi,
                col: self.col_hi,
            },
        ]
    }

    pub fn edges(&self) -> [[Cell; 2]; 4] {
        let [a, b, c, d] = self.vertices();
        [[a, b], [a, c], [b, d], [c, d]]
    }

    /// Every lattice point of the spanned rectangle, row-major.
    pub fn rectangle(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.row_lo..=self.row_hi)
            .flat_map(move |row| (self.col_lo..=self.col_hi).map(move |col| Cell { row, col }))
    }

    /// Whether `set` contains one of the four edges of the minor.
    pub fn has_edge_in(&self, set: &BTreeSet<Cell>) -> bool {
        self.edges()
            .iter()
            .any(|[u, v]| set.contains(u) && set.contains(v))
    }

    pub fn is_adjacent(&self) -> bool {
        self.row_hi == self.row_lo + 1 && self.col_hi == self.col_lo + 1
    }
}

impl fmt::Display for GeneralMinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}|{},{}]",
            self.row_lo, self.row_hi, self.col_lo, self.col_hi
        )
    }
}

/// A finite set of adjacent 2-minors.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    minors: BTreeSet<UnitMinor>,
}

impl Configuration {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a configuration, rejecting repeated anchors.
    pub fn new<I: IntoIterator<Item = UnitMinor>>(minors: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for m in minors {
            if !set.insert(m) {
                return Err(Error::DuplicateAnchor(m.anchor));
            }
        }
        Ok(Configuration { minors: set })
    }

    pub fn from_anchors(anchors: &[(u32, u32)]) -> Result<Self> {
        let minors = anchors
            .iter()
            .map(|&(r, c)| UnitMinor::new(r, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(minors)
    }

    pub(crate) fn from_set(minors: BTreeSet<UnitMinor>) -> Self {
        Configuration { minors }
    }

    pub fn minors(&self) -> &BTreeSet<UnitMinor> {
        &self.minors
    }

    pub fn iter(&self) -> impl Iterator<Item = &UnitMinor> + '_ {
        self.minors.iter()
    }

    pub fn len(&self) -> usize {
        self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minors.is_empty()
    }

    pub fn contains_anchor(&self, row: u32, col: u32) -> bool {
        row >= 1
            && col >= 1
            && self.minors.contains(&UnitMinor {
                anchor: Cell { row, col },
            })
    }

    pub(crate) fn contains_signed(&self, row: i64, col: i64) -> bool {
        row >= 1 && col >= 1 && self.contains_anchor(row as u32, col as u32)
    }

    /// V(C): union of the vertex sets of all minors.
    pub fn vertex_set(&self) -> BTreeSet<Cell> {
        self.minors.iter().flat_map(|m| m.vertices()).collect()
    }

    /// Minors sharing an edge with `m` (at most four).
    pub fn edge_neighbors(&self, m: &UnitMinor) -> Vec<UnitMinor> {
        let (r, c) = (m.anchor.row as i64, m.anchor.col as i64);
        [(r - 1, c), (r, c - 1), (r, c + 1), (r + 1, c)]
            .into_iter()
            .filter(|&(rr, cc)| self.contains_signed(rr, cc))
            .map(|(rr, cc)| UnitMinor {
                anchor: Cell {
                    row: rr as u32,
                    col: cc as u32,
                },
            })
            .collect()
    }

    /// Sub-configuration of the minors satisfying `keep`.
    pub fn filter<F: Fn(&UnitMinor) -> bool>(&self, keep: F) -> Configuration {
        Configuration {
            minors: self.minors.iter().copied().filter(|m| keep(m)).collect(),
        }
    }

    pub fn union(&self, other: &Configuration) -> Configuration {
        Configuration {
            minors: self.minors.union(&other.minors).copied().collect(),
        }
    }
}

impl FromIterator<UnitMinor> for Configuration {
    fn from_iter<T: IntoIterator<Item = UnitMinor>>(iter: T) -> Self {
        Configuration {
            minors: iter.into_iter().collect(),
        }
    }
}
