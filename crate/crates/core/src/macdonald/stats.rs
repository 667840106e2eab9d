//! The box and filling statistics entering the combinatorial formula.

use crate::fillings::Filling;
use crate::lattice::{Cell, Composition, Diagram};

/// Provider of `leg`, `arm`, `maj` and `coinv`.
pub trait Statistics: Sync {
    fn leg(&self, shape: &Composition, cell: Cell) -> u32;
    fn arm(&self, shape: &Composition, cell: Cell) -> u32;
    fn maj(&self, diagram: &Diagram, filling: &Filling) -> u32;
    fn coinv(&self, diagram: &Diagram, filling: &Filling) -> u32;
}

/// Haglund–Haiman–Loehr statistics for column diagrams with the basement
/// `σ̂(j, 0) = j`.
///
/// * `leg(u)`: boxes strictly above `u` in its column.
/// * `arm(i, r)`: boxes `(k, r)` with `k < i`, `μ_k ≤ μ_i`, plus boxes
///   `(k, r − 1)` of the augmented diagram with `k > i`, `μ_k < μ_i`.
/// * `maj`: sum of `leg(u) + 1` over descents `σ̂(u) > σ̂(d(u))`.
/// * `coinv`: the triples `(x, y, z)` formed by a box `x`, the box `z`
///   below it and one of its arm boxes `y` that are ordered
///   `x < y < z`, `y < z < x` or `z < x < y`.
#[derive(Clone, Copy, Debug, Default)]
pub struct HhlStatistics;

fn present(shape: &Composition, column: usize, row: usize) -> bool {
    row == 0 || shape.height(column) >= row
}

fn arm_cells(shape: &Composition, cell: Cell) -> impl Iterator<Item = Cell> + '_ {
    let Cell { column: i, row: r } = cell;
    let h = shape.height(i);
    let same_row = (1..i)
        .filter(move |&k| shape.height(k) <= h && present(shape, k, r))
        .map(move |k| Cell::new(k, r));
    let row_below = (i + 1..=shape.len())
        .filter(move |&k| shape.height(k) < h && present(shape, k, r - 1))
        .map(move |k| Cell::new(k, r - 1));
    same_row.chain(row_below)
}

fn label(diagram: &Diagram, filling: &Filling, cell: Cell) -> usize {
    if cell.row == 0 {
        return cell.column;
    }
    let k = diagram.index_of(cell).expect("cell of the diagram");
    filling.labels()[k]
}

impl Statistics for HhlStatistics {
    fn leg(&self, shape: &Composition, cell: Cell) -> u32 {
        (shape.height(cell.column) - cell.row) as u32
    }

    fn arm(&self, shape: &Composition, cell: Cell) -> u32 {
        arm_cells(shape, cell).count() as u32
    }

    fn maj(&self, diagram: &Diagram, filling: &Filling) -> u32 {
        let shape = diagram.shape();
        diagram
            .cells()
            .iter()
            .zip(filling.labels())
            .filter(|&(&u, &l)| l > label(diagram, filling, u.below().expect("row >= 1")))
            .map(|(&u, _)| self.leg(shape, u) + 1)
            .sum()
    }

    fn coinv(&self, diagram: &Diagram, filling: &Filling) -> u32 {
        let shape = diagram.shape();
        let mut count = 0;
        for (&u, &x) in diagram.cells().iter().zip(filling.labels()) {
            let z = label(diagram, filling, u.below().expect("row >= 1"));
            for v in arm_cells(shape, u) {
                let y = label(diagram, filling, v);
                if (x < y && y < z) || (y < z && z < x) || (z < x && x < y) {
                    count += 1;
                }
            }
        }
        count
    }
}
