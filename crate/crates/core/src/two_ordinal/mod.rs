//! 2-ordinals (pasting shapes made of columns of parallel 1-arrows), their
//! 2-trees, balls, and maps between them.
//!
//! A 2-ordinal with `n` columns has objects `0..=n`; column `c` holds the
//! 1-arrows `0..columns[c]` from object `c` to object `c+1`, and the 2-cell
//! `(c, i)` goes from arrow `i` to arrow `i+1`. 2-cells are numbered
//! column-major.

mod diagram;
mod maps;

pub use diagram::{Diagram, SmallCategory};
pub use maps::{enumerate_maps, MapViolation, TreeMap, TwoOrdinalMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoOrdinal {
    columns: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TwoOrdinalRepr {
    columns: Vec<usize>,
}

impl Serialize for TwoOrdinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TwoOrdinalRepr { columns: self.columns.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwoOrdinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = TwoOrdinalRepr::deserialize(d)?;
        TwoOrdinal::new(r.columns).map_err(serde::de::Error::custom)
    }
}

/// A 2-cell: `(column, index)`, going from arrow `index` to `index + 1`.
pub type Cell = (usize, usize);

impl TwoOrdinal {
    pub fn new(columns: Vec<usize>) -> Result<Self> {
        if columns.iter().any(|&c| c == 0) {
            return Err(Error::Shape("every column needs at least one 1-arrow".into()));
        }
        Ok(Self { columns })
    }

    pub fn globe() -> Self {
        Self { columns: vec![2] }
    }

    pub fn point() -> Self {
        Self { columns: Vec::new() }
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn num_objects(&self) -> usize {
        self.columns.len() + 1
    }

    pub fn column_size(&self, c: usize) -> usize {
        self.columns[c]
    }

    pub fn num_cells(&self) -> usize {
        self.columns.iter().map(|c| c - 1).sum()
    }

    pub fn is_globe(&self) -> bool {
        self.columns == [2]
    }

    /// All 2-cells in column-major order.
    pub fn cells(&self) -> Vec<Cell> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| (0..n - 1).map(move |i| (c, i)))
            .collect()
    }

    pub fn cell_index(&self, (c, i): Cell) -> usize {
        self.columns[..c].iter().map(|n| n - 1).sum::<usize>() + i
    }

    pub fn cell_at(&self, mut flat: usize) -> Cell {
        for (c, &n) in self.columns.iter().enumerate() {
            if flat < n - 1 {
                return (c, flat);
            }
            flat -= n - 1;
        }
        panic!("2-cell index out of range")
    }

    pub fn column_of(&self, flat: usize) -> usize {
        self.cell_at(flat).0
    }

    pub fn tree(&self) -> TwoTree {
        TwoTree { fibers: self.columns.iter().map(|c| c - 1).collect() }
    }

    pub fn from_tree(t: &TwoTree) -> Self {
        Self { columns: t.fibers.iter().map(|f| f + 1).collect() }
    }

    fn check_object(&self, c: usize) -> Result<()> {
        if c >= self.num_objects() {
            return Err(Error::Shape(format!("object {c} outside a 2-ordinal with {} objects", self.num_objects())));
        }
        Ok(())
    }

    /// The hom-poset `hom(c1, c2)` of the generated 2-category.
    pub fn hom_poset(&self, c1: usize, c2: usize) -> Result<HomPoset> {
        self.check_object(c1)?;
        self.check_object(c2)?;
        Ok(match c1.cmp(&c2) {
            std::cmp::Ordering::Greater => HomPoset::Empty,
            std::cmp::Ordering::Equal => HomPoset::Identity,
            std::cmp::Ordering::Less => HomPoset::Product(self.columns[c1..c2].to_vec()),
        })
    }

    /// The minimal ball of a 2-cell.
    pub fn globe_ball(&self, (c, i): Cell) -> Ball {
        Ball { host: self.clone(), cols: (c, c + 1), cells: vec![(i, i + 1)] }
    }

    pub fn whole_ball(&self) -> Ball {
        Ball {
            host: self.clone(),
            cols: (0, self.num_columns()),
            cells: self.columns.iter().map(|n| (0, n - 1)).collect(),
        }
    }
}

/// The poset of 1-arrow paths between two objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomPoset {
    Empty,
    Identity,
    /// Product of the column ordinals, ordered componentwise.
    Product(Vec<usize>),
}

impl HomPoset {
    pub fn len(&self) -> usize {
        match self {
            HomPoset::Empty => 0,
            HomPoset::Identity => 1,
            HomPoset::Product(s) => s.iter().product(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn min(&self) -> Option<Vec<usize>> {
        match self {
            HomPoset::Empty => None,
            HomPoset::Identity => Some(Vec::new()),
            HomPoset::Product(s) => Some(vec![0; s.len()]),
        }
    }

    pub fn max(&self) -> Option<Vec<usize>> {
        match self {
            HomPoset::Empty => None,
            HomPoset::Identity => Some(Vec::new()),
            HomPoset::Product(s) => Some(s.iter().map(|n| n - 1).collect()),
        }
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        match self {
            HomPoset::Empty => false,
            HomPoset::Identity => x.is_empty(),
            HomPoset::Product(s) => x.len() == s.len() && x.iter().zip(s).all(|(a, n)| a < n),
        }
    }

    pub fn leq(&self, a: &[usize], b: &[usize]) -> bool {
        self.contains(a) && self.contains(b) && a.iter().zip(b).all(|(x, y)| x <= y)
    }
}

/// The 2-tree of a 2-ordinal: number of 2-cells over each column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoTree {
    pub fibers: Vec<usize>,
}

impl TwoTree {
    pub fn new(fibers: Vec<usize>) -> Self {
        Self { fibers }
    }

    pub fn to_two_ordinal(&self) -> TwoOrdinal {
        TwoOrdinal::from_tree(self)
    }

    pub fn num_cells(&self) -> usize {
        self.fibers.iter().sum()
    }

    /// The projection from 2-cells (in order) to columns.
    pub fn projection(&self) -> Vec<usize> {
        self.fibers.iter().enumerate().flat_map(|(c, &n)| std::iter::repeat(c).take(n)).collect()
    }
}

/// Round trip through the 2-ordinal a tree encodes.
pub fn tree_roundtrip(t: &TwoTree) -> (TwoOrdinal, TwoTree) {
    let u = t.to_two_ordinal();
    let back = u.tree();
    (u, back)
}

/// A sub-2-ordinal cut out by an object interval and, per column inside
/// it, an interval of 1-arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    host: TwoOrdinal,
    cols: (usize, usize),
    cells: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct BallRepr {
    cols: (usize, usize),
    cells: Vec<(usize, usize)>,
}

impl Serialize for Ball {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BallRepr { cols: self.cols, cells: self.cells.clone() }.serialize(s)
    }
}

impl Ball {
    pub fn new(host: &TwoOrdinal, cols: (usize, usize), cells: Vec<(usize, usize)>) -> Result<Self> {
        let (a, b) = cols;
        if a > b {
            return Err(Error::EmptyInterval(a, b));
        }
        host.check_object(b)?;
        if cells.len() != b - a {
            return Err(Error::Shape(format!("{} cell intervals for {} columns", cells.len(), b - a)));
        }
        for (k, &(lo, hi)) in cells.iter().enumerate() {
            if lo > hi {
                return Err(Error::EmptyInterval(lo, hi));
            }
            if hi >= host.columns[a + k] {
                return Err(Error::Shape(format!("arrow {hi} outside column {}", a + k)));
            }
        }
        Ok(Self { host: host.clone(), cols, cells })
    }

    pub fn from_json(host: &TwoOrdinal, v: &serde_json::Value) -> Result<Self> {
        let r: BallRepr = serde_json::from_value(v.clone())?;
        Ball::new(host, r.cols, r.cells)
    }

    pub fn host(&self) -> &TwoOrdinal {
        &self.host
    }

    pub fn cols(&self) -> (usize, usize) {
        self.cols
    }

    /// Arrow interval in host column `c` (which must lie in the ball).
    pub fn interval(&self, c: usize) -> (usize, usize) {
        self.cells[c - self.cols.0]
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn shape(&self) -> TwoOrdinal {
        TwoOrdinal { columns: self.cells.iter().map(|(lo, hi)| hi - lo + 1).collect() }
    }

    /// Host flat index of the ball's local 2-cell.
    pub fn cell_to_host(&self, local: usize) -> usize {
        let (c, i) = self.shape().cell_at(local);
        self.host.cell_index((c + self.cols.0, i + self.cells[c].0))
    }

    /// Host flat indices of the ball's 2-cells, in the ball's order.
    pub fn host_cells(&self) -> Vec<usize> {
        (0..self.shape().num_cells()).map(|k| self.cell_to_host(k)).collect()
    }

    pub fn contains_cell(&self, (c, i): Cell) -> bool {
        c >= self.cols.0 && c < self.cols.1 && {
            let (lo, hi) = self.interval(c);
            lo <= i && i < hi
        }
    }

    pub fn is_globe(&self) -> bool {
        self.shape().is_globe()
    }
}
