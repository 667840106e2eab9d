//! The Bruhat order on `ℤⁿ` and its lower order ideals.
//!
//! The order is generated by two relations. Both are applied here as
//! down-moves from the larger element `v`, for `i < j`:
//!
//! * `v_i < v_j`: `v > σ_{i,j}(v)`;
//! * `v_i > v_j + 1`: `v > v'` where `v'` replaces `(v_i, v_j)` with
//!   `(v_j + 1, v_i − 1)`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::geometry::{self, LatticePolytope};
use crate::lattice::{Composition, WeightVector};
use crate::points::{PointSet, SupportSet};

/// The immediate down-moves from `v`.
pub fn lower_moves(v: &WeightVector) -> BTreeSet<WeightVector> {
    let a = v.entries();
    let n = a.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if a[i] < a[j] {
                out.insert(v.swap_unchecked(i + 1, j + 1));
            } else if a[i] > a[j] + 1 {
                let mut w = a.to_vec();
                w[i] = a[j] + 1;
                w[j] = a[i] - 1;
                out.insert(WeightVector::new(w).expect("non-empty"));
            }
        }
    }
    out
}

/// `{λ : λ ≤ μ}` together with its covering-move edges.
#[derive(Clone, Debug, Serialize)]
pub struct BruhatIdeal {
    pub top: WeightVector,
    pub elements: SupportSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_edges: Option<Vec<(WeightVector, WeightVector)>>,
}

/// Breadth-first closure of `mu` under [`lower_moves`].
///
/// Vectors with negative entries are shifted to a composition first and
/// shifted back, since both moves commute with adding `(m, …, m)`.
pub fn ideal(mu: &WeightVector) -> BruhatIdeal {
    ideal_inner(mu, false)
}

/// As [`ideal`], also recording every generating move as an edge.
pub fn ideal_with_edges(mu: &WeightVector) -> BruhatIdeal {
    ideal_inner(mu, true)
}

fn ideal_inner(mu: &WeightVector, edges: bool) -> BruhatIdeal {
    let (m, base) = mu.normalize();
    let start = base.to_weight();
    let mut seen: BTreeSet<WeightVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut cover = Vec::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for w in lower_moves(&v) {
            if edges {
                cover.push((v.shift(m), w.shift(m)));
            }
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let elements = PointSet::from_points(seen.into_iter().map(|v| v.shift(m)))
        .expect("ideal contains its top");
    if edges {
        cover.sort();
    }
    BruhatIdeal {
        top: mu.clone(),
        elements,
        cover_edges: edges.then_some(cover),
    }
}

/// `λ ≤ μ` in the Bruhat order.
pub fn leq(lambda: &WeightVector, mu: &WeightVector) -> bool {
    if lambda.len() != mu.len() || lambda.sum() != mu.sum() {
        return false;
    }
    ideal(mu).elements.contains(lambda)
}

/// Every non-negative lattice point of `conv{λ : λ ≤ μ}` is itself `≤ μ`.
pub fn verify_hull_points_in_ideal(mu: &Composition) -> bool {
    let elements = ideal(&mu.to_weight()).elements;
    let points = geometry::lattice_points(&elements).expect("ideal is non-empty");
    points
        .iter()
        .filter(|p| p.entries().iter().all(|&x| x >= 0))
        .all(|p| elements.contains(p))
}

/// `conv{λ : λ ≤ μ}`.
pub fn ideal_hull(mu: &WeightVector) -> LatticePolytope {
    geometry::convex_hull(&ideal(mu).elements).expect("ideal is non-empty")
}
