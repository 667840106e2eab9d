//! Lattice vectors, the operators `s_i`, `σ_{i,j}` and `π`, and column
//! diagrams with their attack relation.
//!
//! Operator indices are 1-based, matching the usual combinatorial
//! notation: `s_1` swaps the first two coordinates.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightVector(Vec<i64>);

impl TryFrom<Vec<i64>> for WeightVector {
    type Error = Error;

    fn try_from(entries: Vec<i64>) -> Result<Self> {
        WeightVector::new(entries)
    }
}

impl From<WeightVector> for Vec<i64> {
    fn from(v: WeightVector) -> Self {
        v.0
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(WeightVector(entries))
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "vectors must have at least one coordinate");
        WeightVector(vec![0; n])
    }

    /// The unit vector `e_i` (1-based).
    pub fn unit(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let mut v = vec![0; n];
        v[i - 1] = 1;
        Ok(WeightVector(v))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `|v| = v_1 + ⋯ + v_n`.
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn min_entry(&self) -> i64 {
        *self.0.iter().min().expect("non-empty")
    }

    fn check_len(&self, other: &WeightVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &WeightVector) -> Result<WeightVector> {
        self.check_len(other)?;
        Ok(WeightVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &WeightVector) -> Result<WeightVector> {
        self.check_len(other)?;
        Ok(WeightVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// `v + (m, …, m)`.
    pub fn shift(&self, m: i64) -> WeightVector {
        WeightVector(self.0.iter().map(|a| a + m).collect())
    }

    /// `v + e_i − e_j` (1-based, `i` may equal `j`).
    pub fn add_root(&self, i: usize, j: usize) -> Result<WeightVector> {
        let n = self.len();
        for k in [i, j] {
            if k == 0 || k > n {
                return Err(Error::IndexOutOfRange { index: k, len: n });
            }
        }
        let mut v = self.0.clone();
        v[i - 1] += 1;
        v[j - 1] -= 1;
        Ok(WeightVector(v))
    }

    /// The simple transposition `s_i`, swapping entries `i` and `i+1`.
    pub fn simple_transposition(&self, i: usize) -> Result<WeightVector> {
        let n = self.len();
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Ok(WeightVector(v))
    }

    /// The transposition `σ_{i,j}` for `1 ≤ i < j ≤ n`.
    pub fn transposition(&self, i: usize, j: usize) -> Result<WeightVector> {
        let n = self.len();
        if i == 0 || i >= j || j > n {
            return Err(Error::BadTransposition { i, j, len: n });
        }
        Ok(self.swap_unchecked(i, j))
    }

    /// Swap entries `i` and `j` in either order. Both must be in range.
    pub(crate) fn swap_unchecked(&self, i: usize, j: usize) -> WeightVector {
        let mut v = self.0.clone();
        v.swap(i - 1, j - 1);
        WeightVector(v)
    }

    /// `π(a_1, …, a_n) = (a_n + 1, a_1, …, a_{n−1})`.
    pub fn pi(&self) -> WeightVector {
        let mut v = self.rotate_right();
        v.0[0] += 1;
        v
    }

    /// `(a_n, a_1, …, a_{n−1})`, i.e. `s_1 ⋯ s_{n−1}` applied to `a`.
    pub fn rotate_right(&self) -> WeightVector {
        let mut v = self.0.clone();
        v.rotate_right(1);
        WeightVector(v)
    }

    /// Split `v = (m, …, m) + c` with `c` a composition and `min(c) = 0`.
    pub fn normalize(&self) -> (i64, Composition) {
        let m = self.min_entry();
        let c = self.0.iter().map(|a| (a - m) as usize).collect();
        (m, Composition(c))
    }

    pub fn to_composition(&self) -> Result<Composition> {
        if self.0.iter().any(|&a| a < 0) {
            return Err(Error::NegativeEntry(self.0.clone()));
        }
        Ok(Composition(self.0.iter().map(|&a| a as usize).collect()))
    }
}

/// A weak composition: a point of `ℤⁿ` with non-negative entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Composition(Vec<usize>);

impl TryFrom<Vec<i64>> for Composition {
    type Error = Error;

    fn try_from(entries: Vec<i64>) -> Result<Self> {
        WeightVector::new(entries)?.to_composition()
    }
}

impl From<Composition> for Vec<i64> {
    fn from(c: Composition) -> Self {
        c.0.into_iter().map(|a| a as i64).collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_weight().fmt(f)
    }
}

impl Composition {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Composition(entries))
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "compositions must have at least one part");
        Composition(vec![0; n])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Height of column `i` (1-based).
    #[inline]
    pub fn height(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `|μ|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// 1-based index of the first non-zero part.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&a| a > 0).map(|k| k + 1)
    }

    pub fn max_part(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn to_weight(&self) -> WeightVector {
        WeightVector(self.0.iter().map(|&a| a as i64).collect())
    }

    /// Concatenate two compositions.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    /// Swap parts `i` and `i + 1` (1-based).
    pub fn simple_transposition(&self, i: usize) -> Result<Composition> {
        self.to_weight().simple_transposition(i)?.to_composition()
    }

    /// All compositions with `n` parts and `|μ| ≤ max_size`, ordered by
    /// size and then lexicographically.
    pub fn all_up_to(n: usize, max_size: usize) -> Vec<Composition> {
        let mut out = Vec::new();
        for size in 0..=max_size {
            let mut buf = vec![0; n];
            compositions_of(size, 0, &mut buf, &mut out);
        }
        out
    }
}

fn compositions_of(remaining: usize, k: usize, buf: &mut Vec<usize>, out: &mut Vec<Composition>) {
    let n = buf.len();
    if k + 1 == n {
        buf[k] = remaining;
        out.push(Composition(buf.clone()));
        return;
    }
    for a in (0..=remaining).rev() {
        buf[k] = a;
        compositions_of(remaining - a, k + 1, buf, out);
    }
}

/// A box `(column, row)` of an augmented diagram. Columns are 1-based and
/// row 0 is the basement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub column: usize,
    pub row: usize,
}

impl Cell {
    pub const fn new(column: usize, row: usize) -> Self {
        Cell { column, row }
    }

    /// The box `d(u)` directly below.
    pub fn below(&self) -> Option<Cell> {
        (self.row > 0).then(|| Cell::new(self.column, self.row - 1))
    }

    /// Distinct boxes attack each other when they share a row, or lie in
    /// consecutive rows with the lower box strictly right of the upper one.
    pub fn attacks(&self, other: &Cell) -> bool {
        if self == other {
            return false;
        }
        if self.row == other.row {
            return true;
        }
        let (lower, upper) = if self.row < other.row {
            (self, other)
        } else {
            (other, self)
        };
        upper.row == lower.row + 1 && lower.column > upper.column
    }
}

/// Boxes of `dg′(μ)` in reading order: rows bottom to top, left to right.
pub fn reading_order(shape: &Composition) -> Vec<Cell> {
    let mut cells = Vec::with_capacity(shape.size());
    for row in 1..=shape.max_part() {
        for column in 1..=shape.len() {
            if shape.height(column) >= row {
                cells.push(Cell::new(column, row));
            }
        }
    }
    cells
}

/// The column diagram `dg′(μ)` together with its basement and
/// precomputed attack relation.
#[derive(Clone, Debug)]
pub struct Diagram {
    shape: Composition,
    /// Diagram boxes in reading order: rows bottom to top, left to right.
    cells: Vec<Cell>,
    /// `grid[c-1][r]` is the augmented index of box `(c, r)`.
    grid: Vec<Vec<usize>>,
    /// Neighbours in the attack relation, indexed by augmented index.
    /// Augmented indices `0..cells.len()` are diagram boxes, then the
    /// basement boxes `(1,0), …, (n,0)`.
    attackers: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn new(shape: &Composition) -> Diagram {
        let n = shape.len();
        let cells = reading_order(shape);
        let boxes = cells.len();
        let mut grid: Vec<Vec<usize>> = (1..=n)
            .map(|c| vec![usize::MAX; shape.height(c) + 1])
            .collect();
        for (k, cell) in cells.iter().enumerate() {
            grid[cell.column - 1][cell.row] = k;
        }
        for column in 1..=n {
            grid[column - 1][0] = boxes + column - 1;
        }

        let all: Vec<Cell> = cells
            .iter()
            .copied()
            .chain((1..=n).map(|c| Cell::new(c, 0)))
            .collect();
        let mut attackers = vec![Vec::new(); all.len()];
        for a in 0..all.len() {
            for b in (a + 1)..all.len() {
                if all[a].attacks(&all[b]) {
                    attackers[a].push(b);
                    attackers[b].push(a);
                }
            }
        }
        Diagram {
            shape: shape.clone(),
            cells,
            grid,
            attackers,
        }
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    /// Number of label values, which is also the number of columns.
    pub fn n(&self) -> usize {
        self.shape.len()
    }

    /// Diagram boxes in reading order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn basement(&self) -> Vec<Cell> {
        (1..=self.n()).map(|c| Cell::new(c, 0)).collect()
    }

    /// Augmented index of a box, if it belongs to the augmented diagram.
    pub fn index_of(&self, cell: Cell) -> Option<usize> {
        self.grid
            .get(cell.column.wrapping_sub(1))
            .and_then(|col| col.get(cell.row))
            .copied()
    }

    pub(crate) fn cell_at(&self, index: usize) -> Cell {
        if index < self.cells.len() {
            self.cells[index]
        } else {
            Cell::new(index - self.cells.len() + 1, 0)
        }
    }

    /// Augmented indices attacking (or attacked by) augmented index `k`.
    pub(crate) fn neighbours(&self, k: usize) -> &[usize] {
        &self.attackers[k]
    }

    pub fn attack(&self, u: Cell, v: Cell) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(_)) => self.attackers[a].iter().any(|&b| self.cell_at(b) == v),
            _ => false,
        }
    }

    /// All unordered attacking pairs of the augmented diagram, each listed
    /// once as `(u, v)` with `u < v`.
    pub fn attack_pairs(&self) -> BTreeSet<(Cell, Cell)> {
        let mut out = BTreeSet::new();
        for (a, nbrs) in self.attackers.iter().enumerate() {
            for &b in nbrs {
                let (u, v) = (self.cell_at(a), self.cell_at(b));
                out.insert(if u < v { (u, v) } else { (v, u) });
            }
        }
        out
    }
}
