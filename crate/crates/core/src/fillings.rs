//! Non-attacking fillings of column diagrams, their label multiplicities,
//! and the column-shift identities relating the families
//! `ν_i = 0^{i−1} ∗ a ∗ 0^{m−i} ∗ base`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{reading_order, Cell, Composition, Diagram, WeightVector};
use crate::points::{PointSet, SupportSet};

/// A labelling of the boxes of `dg′(μ)` by `1..=n`. Labels are stored in
/// reading order; the basement is implicit (box `(j, 0)` carries `j`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filling {
    shape: Composition,
    labels: Vec<usize>,
}

impl Filling {
    /// Build a filling from labels listed in reading order.
    pub fn new(shape: Composition, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != shape.size() {
            return Err(Error::FillingSize {
                expected: shape.size(),
                got: labels.len(),
            });
        }
        let n = shape.len();
        if let Some(&label) = labels.iter().find(|&&l| l == 0 || l > n) {
            return Err(Error::LabelOutOfRange { label, n });
        }
        Ok(Filling { shape, labels })
    }

    /// Build a filling from `(column, row, label)` triples in any order.
    pub fn from_cells(shape: Composition, cells: &[(usize, usize, usize)]) -> Result<Self> {
        let order = reading_order(&shape);
        let mut labels = vec![0; order.len()];
        for &(column, row, label) in cells {
            let k = order
                .iter()
                .position(|c| *c == Cell::new(column, row))
                .ok_or(Error::UnknownBox { column, row })?;
            labels[k] = label;
        }
        if cells.len() != order.len() {
            return Err(Error::FillingSize {
                expected: order.len(),
                got: cells.len(),
            });
        }
        Filling::new(shape, labels)
    }

    pub fn empty(n: usize) -> Filling {
        Filling {
            shape: Composition::zero(n),
            labels: Vec::new(),
        }
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    /// Labels in reading order.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Label of a box of the augmented diagram, basement included.
    pub fn label_at(&self, cell: Cell) -> Option<usize> {
        if cell.row == 0 {
            return (1..=self.shape.len()).contains(&cell.column).then_some(cell.column);
        }
        reading_order(&self.shape)
            .iter()
            .position(|c| *c == cell)
            .map(|k| self.labels[k])
    }

    /// `(column, row, label)` for every diagram box, in reading order.
    pub fn cells(&self) -> Vec<(Cell, usize)> {
        reading_order(&self.shape)
            .into_iter()
            .zip(self.labels.iter().copied())
            .collect()
    }

    /// `γ(σ)`: apply a map to every label.
    pub fn relabel<F: Fn(usize) -> usize>(&self, gamma: F) -> Filling {
        Filling {
            shape: self.shape.clone(),
            labels: self.labels.iter().map(|&l| gamma(l)).collect(),
        }
    }

    /// Entry `j` counts the boxes labelled `j`.
    pub fn multiplicity(&self) -> WeightVector {
        let mut m = vec![0i64; self.shape.len()];
        for &l in &self.labels {
            m[l - 1] += 1;
        }
        WeightVector::new(m).expect("n >= 1")
    }

    /// Whether no two attacking boxes of the augmented diagram share a label.
    pub fn is_nonattacking(&self) -> bool {
        self.is_nonattacking_in(&Diagram::new(&self.shape))
    }

    /// As [`Filling::is_nonattacking`], reusing a prebuilt diagram of the
    /// same shape.
    pub fn is_nonattacking_in(&self, diagram: &Diagram) -> bool {
        debug_assert_eq!(diagram.shape(), &self.shape);
        let boxes = self.labels.len();
        let aug = |k: usize| {
            if k < boxes {
                self.labels[k]
            } else {
                k - boxes + 1
            }
        };
        (0..boxes).all(|a| diagram.neighbours(a).iter().all(|&b| aug(a) != aug(b)))
    }
}

/// Label swap `a ↔ b` as a map on labels.
pub(crate) fn swap_labels(a: usize, b: usize) -> impl Fn(usize) -> usize {
    move |l| {
        if l == a {
            b
        } else if l == b {
            a
        } else {
            l
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FillingRepr {
    shape: Vec<i64>,
    labels: Vec<[usize; 3]>,
}

impl Serialize for Filling {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FillingRepr {
            shape: self.shape.clone().into(),
            labels: self
                .cells()
                .into_iter()
                .map(|(c, l)| [c.column, c.row, l])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Filling {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = FillingRepr::deserialize(deserializer)?;
        let shape = Composition::try_from(repr.shape).map_err(serde::de::Error::custom)?;
        let cells: Vec<(usize, usize, usize)> =
            repr.labels.iter().map(|&[c, r, l]| (c, r, l)).collect();
        Filling::from_cells(shape, &cells).map_err(serde::de::Error::custom)
    }
}

/// Whether `f` is non-attacking. Fails on labels outside `1..=n`.
pub fn is_nonattacking(f: &Filling) -> Result<bool> {
    let n = f.shape.len();
    if let Some(&label) = f.labels.iter().find(|&&l| l == 0 || l > n) {
        return Err(Error::LabelOutOfRange { label, n });
    }
    Ok(f.is_nonattacking())
}

/// Every non-attacking filling of `dg′(c)`, in canonical order: boxes in
/// reading order, labels ascending (lexicographic order of label vectors).
pub fn enumerate_nonattacking(c: &Composition) -> Vec<Filling> {
    let diagram = Diagram::new(c);
    enumerate_in(&diagram)
}

pub(crate) fn enumerate_in(diagram: &Diagram) -> Vec<Filling> {
    let n = diagram.n();
    let boxes = diagram.cells().len();
    if boxes == 0 {
        return vec![Filling::empty(n)];
    }
    let first: Vec<usize> = allowed_labels(diagram, &[], 0);
    first
        .par_iter()
        .map(|&label| {
            let mut labels = Vec::with_capacity(boxes);
            labels.push(label);
            let mut out = Vec::new();
            extend(diagram, &mut labels, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Labels available to box `k` given the labels of boxes `0..k`.
fn allowed_labels(diagram: &Diagram, assigned: &[usize], k: usize) -> Vec<usize> {
    let n = diagram.n();
    let boxes = diagram.cells().len();
    let mut forbidden = vec![false; n + 1];
    for &b in diagram.neighbours(k) {
        if b >= boxes {
            forbidden[b - boxes + 1] = true;
        } else if b < k {
            forbidden[assigned[b]] = true;
        }
    }
    (1..=n).filter(|&l| !forbidden[l]).collect()
}

fn extend(diagram: &Diagram, labels: &mut Vec<usize>, out: &mut Vec<Filling>) {
    let k = labels.len();
    if k == diagram.cells().len() {
        out.push(Filling {
            shape: diagram.shape().clone(),
            labels: labels.clone(),
        });
        return;
    }
    for label in allowed_labels(diagram, labels, k) {
        labels.push(label);
        extend(diagram, labels, out);
        labels.pop();
    }
}

/// Image of the non-attacking fillings under [`Filling::multiplicity`].
pub fn support_by_enumeration(c: &Composition) -> SupportSet {
    let mut s = PointSet::empty(c.len());
    for f in enumerate_nonattacking(c) {
        s.insert(f.multiplicity()).expect("same length");
    }
    s
}

fn check_chain_shape(shape: &Composition, i: usize) -> Result<()> {
    let n = shape.len();
    if i == 0 || i >= n {
        return Err(Error::ChainPrecondition(format!(
            "index {i} must lie in 1..{n}"
        )));
    }
    if shape.first_nonzero() != Some(i + 1) {
        return Err(Error::ChainPrecondition(format!(
            "the first non-empty column of {shape} must be column {}",
            i + 1
        )));
    }
    Ok(())
}

/// The maximal attacking chain of boxes labelled `i` or `i+1`, starting at
/// the bottom box of the first non-empty column (column `i+1`), scanning
/// boxes in reading order.
pub fn attacking_chain(f: &Filling, i: usize) -> Result<Vec<Cell>> {
    check_chain_shape(&f.shape, i)?;
    let diagram = Diagram::new(&f.shape);
    let start = Cell::new(i + 1, 1);
    let k0 = diagram.index_of(start).expect("column i+1 is non-empty");
    if f.labels[k0] != i + 1 {
        return Err(Error::ChainPrecondition(format!(
            "box {start:?} is labelled {}, expected {}",
            f.labels[k0],
            i + 1
        )));
    }
    Ok(chain_indices(&diagram, f, i, k0)
        .into_iter()
        .map(|k| diagram.cell_at(k))
        .collect())
}

fn chain_indices(diagram: &Diagram, f: &Filling, i: usize, k0: usize) -> Vec<usize> {
    let in_play = |k: usize| f.labels[k] == i || f.labels[k] == i + 1;
    let mut chain = vec![k0];
    let mut end = k0;
    loop {
        let next = (end + 1..f.labels.len())
            .find(|&k| in_play(k) && diagram.neighbours(end).contains(&k));
        match next {
            Some(k) => {
                chain.push(k);
                end = k;
            }
            None => break,
        }
    }
    chain
}

/// Flip `i ↔ i+1` along the attacking chain of `f ∈ L(ν_{i+1}) \ L(ν_i)`,
/// returning the corresponding filling of `ν_i` (the first non-empty
/// column moved one step left).
pub fn chain_flip(f: &Filling, i: usize) -> Result<Filling> {
    check_chain_shape(&f.shape, i)?;
    let diagram = Diagram::new(&f.shape);
    let k0 = diagram
        .index_of(Cell::new(i + 1, 1))
        .expect("column i+1 is non-empty");
    if f.labels[k0] != i + 1 {
        return Err(Error::ChainPrecondition(format!(
            "bottom box of column {} is labelled {}, expected {}",
            i + 1,
            f.labels[k0],
            i + 1
        )));
    }
    let chain = chain_indices(&diagram, f, i, k0);

    // No other i/(i+1) box may touch the chain.
    for k in 0..f.labels.len() {
        if chain.contains(&k) || (f.labels[k] != i && f.labels[k] != i + 1) {
            continue;
        }
        if chain.iter().any(|c| diagram.neighbours(*c).contains(&k)) {
            return Err(Error::Invariant(format!(
                "box {:?} labelled {} attacks the chain but is not on it",
                diagram.cell_at(k),
                f.labels[k]
            )));
        }
    }

    let flip = swap_labels(i, i + 1);
    let mut labels = f.labels.clone();
    for &k in &chain {
        labels[k] = flip(labels[k]);
    }
    // Moving the first column one step left keeps the reading order of
    // every box, so the label vector carries over unchanged.
    let shape = f.shape.simple_transposition(i)?;
    let flipped = Filling { shape, labels };
    if !flipped.is_nonattacking() {
        return Err(Error::Invariant(format!(
            "flipped filling {:?} attacks itself",
            flipped.labels
        )));
    }
    Ok(flipped)
}

/// The compositions `ν_1, …, ν_m` with `ν_i = 0^{i−1} ∗ a ∗ 0^{m−i} ∗ base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuFamily {
    base: Vec<usize>,
    column_height: usize,
    prefix_length: usize,
}

impl NuFamily {
    pub fn new(base: Vec<usize>, column_height: usize, prefix_length: usize) -> Result<Self> {
        if column_height == 0 {
            return Err(Error::InvalidFamily("column height must be at least 1".into()));
        }
        if prefix_length < 2 {
            return Err(Error::InvalidFamily("prefix length must be at least 2".into()));
        }
        Ok(NuFamily {
            base,
            column_height,
            prefix_length,
        })
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn column_height(&self) -> usize {
        self.column_height
    }

    pub fn prefix_length(&self) -> usize {
        self.prefix_length
    }

    /// Length of every member.
    pub fn n(&self) -> usize {
        self.prefix_length + self.base.len()
    }

    /// `ν_i` for `1 ≤ i ≤ m`.
    pub fn member(&self, i: usize) -> Result<Composition> {
        if i == 0 || i > self.prefix_length {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.prefix_length,
            });
        }
        let mut parts = vec![0; self.prefix_length];
        parts[i - 1] = self.column_height;
        parts.extend_from_slice(&self.base);
        Composition::new(parts)
    }

    pub fn members(&self) -> Vec<Composition> {
        (1..=self.prefix_length)
            .map(|i| self.member(i).expect("in range"))
            .collect()
    }

    fn check_step(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.prefix_length {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.prefix_length - 1,
            });
        }
        Ok(())
    }

    /// Non-attacking fillings of `ν_i`, keyed by their reading-order label
    /// vector. The moving column is always the leftmost box of its rows,
    /// so the reading order identifies boxes across the whole family.
    fn labelings(&self, i: usize) -> Result<BTreeSet<Vec<usize>>> {
        Ok(enumerate_nonattacking(&self.member(i)?)
            .into_iter()
            .map(|f| f.labels)
            .collect())
    }

    /// Every enumerated `σ ∈ L(ν_i)` labels the bottom box of the moving
    /// column with one of `1..=i`.
    pub fn verify_moving_column_bottom(&self, i: usize) -> Result<bool> {
        let shape = self.member(i)?;
        let k = reading_order(&shape)
            .iter()
            .position(|c| *c == Cell::new(i, 1))
            .expect("moving column is non-empty");
        Ok(self.labelings(i)?.iter().all(|l| (1..=i).contains(&l[k])))
    }

    /// `L(ν_{i+1}) = L(ν_i) ⊔ σ_{1,i+1}(L(ν_1))`, disjointness included.
    pub fn verify_partial_sym(&self, i: usize) -> Result<bool> {
        self.check_step(i)?;
        let next = self.labelings(i + 1)?;
        let here = self.labelings(i)?;
        let swapped = relabel_all(&self.labelings(1)?, swap_labels(1, i + 1));
        Ok(disjoint_union_equals(&[&here, &swapped], &next))
    }

    /// `L(ν_i) = ⊔_{k ≤ i} σ_{1,k}(L(ν_1))` and, for `i < m`,
    /// `L(ν_{i+1}) = L(ν_i) ∪ s_i(L(ν_i))`.
    pub fn verify_inductive_labelings(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.prefix_length {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.prefix_length,
            });
        }
        let first = self.labelings(1)?;
        let here = self.labelings(i)?;
        let pieces: Vec<BTreeSet<Vec<usize>>> = (1..=i)
            .map(|k| relabel_all(&first, swap_labels(1, k)))
            .collect();
        let refs: Vec<&BTreeSet<Vec<usize>>> = pieces.iter().collect();
        if !disjoint_union_equals(&refs, &here) {
            return Ok(false);
        }
        if i < self.prefix_length {
            let next = self.labelings(i + 1)?;
            let reflected = relabel_all(&here, swap_labels(i, i + 1));
            let union: BTreeSet<Vec<usize>> = here.union(&reflected).cloned().collect();
            if union != next {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `s_i(supp E_{ν_i}) ⊆ supp E_{ν_i} ∪ (supp E_{ν_i} + e_{i+1} − e_i)`.
    pub fn verify_reflection_inclusion(&self, i: usize) -> Result<bool> {
        self.check_step(i)?;
        let support = support_by_enumeration(&self.member(i)?);
        for p in support.iter() {
            let image = p.simple_transposition(i)?;
            if support.contains(&image) {
                continue;
            }
            // image = q + e_{i+1} − e_i for some q in the support
            if !support.contains(&image.add_root(i, i + 1)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every `σ ∈ L(ν_{i+1}) \ L(ν_i)` flips along its attacking chain to a
    /// `σ′ ∈ L(ν_i)` with the same multiplicities, or with one more `i` and
    /// one fewer `i+1`.
    pub fn verify_labeling_constraint(&self, i: usize) -> Result<bool> {
        self.check_step(i)?;
        let shape = self.member(i + 1)?;
        let here = self.labelings(i)?;
        for f in enumerate_nonattacking(&shape) {
            if here.contains(&f.labels) {
                continue;
            }
            let flipped = match chain_flip(&f, i) {
                Ok(g) => g,
                Err(_) => return Ok(false),
            };
            if !here.contains(&flipped.labels) {
                return Ok(false);
            }
            let before = f.multiplicity();
            let after = flipped.multiplicity();
            if after != before && after != before.add_root(i, i + 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn relabel_all<F: Fn(usize) -> usize>(
    set: &BTreeSet<Vec<usize>>,
    gamma: F,
) -> BTreeSet<Vec<usize>> {
    set.iter()
        .map(|l| l.iter().map(|&x| gamma(x)).collect())
        .collect()
}

fn disjoint_union_equals(parts: &[&BTreeSet<Vec<usize>>], whole: &BTreeSet<Vec<usize>>) -> bool {
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let union: BTreeSet<&Vec<usize>> = parts.iter().flat_map(|p| p.iter()).collect();
    union.len() == total && union.len() == whole.len() && union.into_iter().all(|l| whole.contains(l))
}

/// Family-level check of `verify_partial_sym` usable without a method call.
pub fn verify_partial_sym(fam: &NuFamily, i: usize) -> Result<bool> {
    fam.verify_partial_sym(i)
}

pub fn verify_reflection_inclusion(fam: &NuFamily, i: usize) -> Result<bool> {
    fam.verify_reflection_inclusion(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    fn wv(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    /// Brute force over all `n^|μ|` labellings, filtered pair by pair with
    /// the raw attack definition.
    fn brute_force(c: &Composition) -> Vec<Vec<usize>> {
        let cells = reading_order(c);
        let n = c.len();
        let augmented: Vec<Cell> = cells
            .iter()
            .copied()
            .chain((1..=n).map(|j| Cell::new(j, 0)))
            .collect();
        let total = n.pow(cells.len() as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut x = code;
            let mut labels = Vec::new();
            for _ in 0..cells.len() {
                labels.push(x % n + 1);
                x /= n;
            }
            let label = |k: usize| {
                if k < cells.len() {
                    labels[k]
                } else {
                    augmented[k].column
                }
            };
            let ok = (0..augmented.len()).all(|a| {
                (a + 1..augmented.len())
                    .all(|b| !augmented[a].attacks(&augmented[b]) || label(a) != label(b))
            });
            if ok {
                out.push(labels);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn paper_labelings_of_1_0_2() {
        let shape = comp(&[1, 0, 2]);
        let valid = [
            [(1, 1, 1), (3, 1, 2), (3, 2, 1)],
            [(1, 1, 1), (3, 1, 2), (3, 2, 3)],
            [(1, 1, 1), (3, 1, 3), (3, 2, 3)],
        ];
        for cells in valid {
            let f = Filling::from_cells(shape.clone(), &cells).unwrap();
            assert!(is_nonattacking(&f).unwrap(), "{cells:?}");
        }
        let invalid = [
            [(1, 1, 2), (3, 1, 1), (3, 2, 1)],
            [(1, 1, 1), (3, 1, 1), (3, 2, 2)],
            [(1, 1, 3), (3, 1, 1), (3, 2, 2)],
        ];
        for cells in invalid {
            let f = Filling::from_cells(shape.clone(), &cells).unwrap();
            assert!(!is_nonattacking(&f).unwrap(), "{cells:?}");
        }
    }

    #[test]
    fn label_range_is_checked() {
        let shape = comp(&[1, 0]);
        assert!(matches!(
            Filling::new(shape.clone(), vec![3]),
            Err(Error::LabelOutOfRange { label: 3, n: 2 })
        ));
        assert!(Filling::new(shape, vec![0]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_nonattacking(&comp(&[0, 0, 0])).len(), 1);
        assert_eq!(enumerate_nonattacking(&comp(&[0, 2, 0])).len(), 6);
        assert_eq!(enumerate_nonattacking(&comp(&[1, 0, 2])).len(), 6);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=4 {
            let max = if n == 4 { 5 } else { 6 };
            for c in Composition::all_up_to(n, max) {
                let got: Vec<Vec<usize>> = enumerate_nonattacking(&c)
                    .into_iter()
                    .map(|f| f.labels)
                    .collect();
                assert_eq!(got, brute_force(&c), "shape {c}");
            }
        }
    }

    #[test]
    fn multiplicities() {
        let f = Filling::from_cells(comp(&[0, 2, 0]), &[(2, 1, 1), (2, 2, 1)]).unwrap();
        assert_eq!(f.multiplicity(), wv(&[2, 0, 0]));
        assert_eq!(Filling::empty(3).multiplicity(), wv(&[0, 0, 0]));
    }

    #[test]
    fn supports_by_enumeration() {
        let s = support_by_enumeration(&comp(&[0, 2, 0]));
        let expected =
            PointSet::from_rows(&[&[0, 2, 0], &[2, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
                .unwrap();
        assert_eq!(s, expected);
        assert_eq!(
            support_by_enumeration(&comp(&[0, 0, 0])),
            PointSet::from_rows(&[&[0, 0, 0]]).unwrap()
        );
        let s = support_by_enumeration(&comp(&[1, 0, 2]));
        let expected =
            PointSet::from_rows(&[&[1, 0, 2], &[1, 2, 0], &[2, 0, 1], &[2, 1, 0], &[1, 1, 1]])
                .unwrap();
        assert_eq!(s, expected);
    }

    /// The eight-column example: `μ = (0,0,2,3,1,2,2,4)` with the chain
    /// a, b, c, d, e flipping 3 ↔ 2.
    fn eight_column_example() -> Filling {
        let shape = comp(&[0, 0, 2, 3, 1, 2, 2, 4]);
        Filling::from_cells(
            shape,
            &[
                (3, 1, 3),
                (4, 1, 4),
                (5, 1, 2),
                (6, 1, 5),
                (7, 1, 1),
                (8, 1, 8),
                (3, 2, 3),
                (4, 2, 6),
                (6, 2, 4),
                (7, 2, 2),
                (8, 2, 7),
                (4, 3, 3),
                (8, 3, 1),
                (8, 4, 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eight_column_chain_flip() {
        let sigma = eight_column_example();
        assert!(sigma.is_nonattacking());
        assert_eq!(sigma.multiplicity(), wv(&[2, 3, 3, 2, 1, 1, 1, 1]));
        let chain = attacking_chain(&sigma, 2).unwrap();
        assert_eq!(
            chain,
            vec![
                Cell::new(3, 1),
                Cell::new(5, 1),
                Cell::new(3, 2),
                Cell::new(7, 2),
                Cell::new(4, 3)
            ]
        );
        let flipped = chain_flip(&sigma, 2).unwrap();
        assert_eq!(flipped.shape(), &comp(&[0, 2, 0, 3, 1, 2, 2, 4]));
        assert_eq!(flipped.multiplicity(), wv(&[2, 4, 2, 2, 1, 1, 1, 1]));
        // the top-right 2 is off the chain and keeps its label
        assert_eq!(flipped.label_at(Cell::new(8, 4)), Some(2));
        assert_eq!(flipped.label_at(Cell::new(2, 1)), Some(2));
        assert_eq!(flipped.label_at(Cell::new(7, 2)), Some(3));
    }

    #[test]
    fn single_box_chain() {
        // ν_2 = (0,1): the lone box labelled 2 flips to 1
        let f = Filling::new(comp(&[0, 1]), vec![2]).unwrap();
        let g = chain_flip(&f, 1).unwrap();
        assert_eq!(g.shape(), &comp(&[1, 0]));
        assert_eq!(g.labels(), &[1]);
        assert_eq!(g.multiplicity(), wv(&[1, 0]));
    }

    #[test]
    fn chain_flip_preconditions() {
        let f = Filling::new(comp(&[0, 1]), vec![1]).unwrap();
        assert!(matches!(chain_flip(&f, 1), Err(Error::ChainPrecondition(_))));
        let f = Filling::new(comp(&[1, 1]), vec![1, 2]).unwrap();
        assert!(chain_flip(&f, 1).is_err());
        assert!(chain_flip(&f, 0).is_err());
    }

    #[test]
    fn partial_sym_examples() {
        let fam = NuFamily::new(vec![2, 1], 2, 3).unwrap();
        assert_eq!(fam.member(1).unwrap(), comp(&[2, 0, 0, 2, 1]));
        assert_eq!(fam.member(2).unwrap(), comp(&[0, 2, 0, 2, 1]));
        assert!(fam.verify_partial_sym(1).unwrap());
        assert!(fam.verify_partial_sym(2).unwrap());

        let fam = NuFamily::new(vec![], 1, 2).unwrap();
        assert!(fam.verify_partial_sym(1).unwrap());
        let l1: Vec<_> = enumerate_nonattacking(&comp(&[1, 0]));
        let l2: Vec<_> = enumerate_nonattacking(&comp(&[0, 1]));
        assert_eq!(l1.iter().map(|f| f.labels.clone()).collect::<Vec<_>>(), vec![vec![1]]);
        assert_eq!(
            l2.iter().map(|f| f.labels.clone()).collect::<Vec<_>>(),
            vec![vec![1], vec![2]]
        );

        let fam = NuFamily::new(vec![1], 1, 2).unwrap();
        assert!(fam.verify_partial_sym(1).unwrap());
    }

    #[test]
    fn reflection_inclusion_examples() {
        for (base, a, m) in [(vec![2, 1], 2, 3), (vec![], 1, 2), (vec![1, 1], 2, 2)] {
            let fam = NuFamily::new(base, a, m).unwrap();
            assert!(fam.verify_reflection_inclusion(1).unwrap());
        }
    }

    #[test]
    fn family_validation() {
        assert!(NuFamily::new(vec![1], 0, 2).is_err());
        assert!(NuFamily::new(vec![1], 1, 1).is_err());
        let fam = NuFamily::new(vec![1], 1, 2).unwrap();
        assert!(fam.verify_partial_sym(2).is_err());
        assert!(fam.member(3).is_err());
    }

    #[test]
    fn filling_json() {
        let f = Filling::from_cells(comp(&[1, 0, 2]), &[(3, 2, 1), (1, 1, 1), (3, 1, 2)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"shape":[1,0,2],"labels":[[1,1,1],[3,1,2],[3,2,1]]}"#);
        let back: Filling = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Filling>(r#"{"shape":[1],"labels":[[2,1,1]]}"#).is_err());
    }
}
