use std::collections::btree_set;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::WeightVector;

/// A finite set of lattice points of a fixed dimension, kept in
/// lexicographic order. Supports of polynomials and Bruhat ideals are both
/// represented this way.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<WeightVector>", into = "Vec<WeightVector>")]
pub struct PointSet {
    dim: usize,
    points: BTreeSet<WeightVector>,
}

pub type SupportSet = PointSet;

impl TryFrom<Vec<WeightVector>> for PointSet {
    type Error = Error;

    fn try_from(points: Vec<WeightVector>) -> Result<Self> {
        PointSet::from_points(points)
    }
}

impl From<PointSet> for Vec<WeightVector> {
    fn from(s: PointSet) -> Self {
        s.points.into_iter().collect()
    }
}

impl PointSet {
    /// An empty set of points in `ℤ^dim`.
    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim,
            points: BTreeSet::new(),
        }
    }

    pub fn singleton(v: WeightVector) -> Self {
        let mut s = PointSet::empty(v.len());
        s.points.insert(v);
        s
    }

    /// Build a set from points of equal length; duplicates collapse.
    pub fn from_points<I: IntoIterator<Item = WeightVector>>(points: I) -> Result<Self> {
        let mut iter = points.into_iter();
        let first = iter.next().ok_or(Error::EmptyPointSet)?;
        let mut s = PointSet::singleton(first);
        for p in iter {
            s.insert(p)?;
        }
        Ok(s)
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        PointSet::from_points(
            rows.iter()
                .map(|r| WeightVector::new(r.to_vec()))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn insert(&mut self, p: WeightVector) -> Result<bool> {
        if p.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        Ok(self.points.insert(p))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &WeightVector) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> btree_set::Iter<'_, WeightVector> {
        self.points.iter()
    }

    pub fn to_vec(&self) -> Vec<WeightVector> {
        self.points.iter().cloned().collect()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        let mut out = self.clone();
        for p in other.iter() {
            out.insert(p.clone())?;
        }
        Ok(out)
    }

    /// Apply a coordinate map to every point.
    pub fn map<F>(&self, f: F) -> PointSet
    where
        F: Fn(&WeightVector) -> WeightVector,
    {
        let points: BTreeSet<WeightVector> = self.points.iter().map(f).collect();
        let dim = points.iter().next().map_or(self.dim, WeightVector::len);
        PointSet { dim, points }
    }

    pub fn translate(&self, by: &WeightVector) -> Result<PointSet> {
        if by.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: by.len(),
            });
        }
        Ok(self.map(|p| p.checked_add(by).expect("length checked")))
    }

    /// The common coordinate sum, if all points share one.
    pub fn common_sum(&self) -> Option<i64> {
        let mut iter = self.points.iter();
        let s = iter.next()?.sum();
        iter.all(|p| p.sum() == s).then_some(s)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a WeightVector;
    type IntoIter = btree_set::Iter<'a, WeightVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}
