//! Discrete convex analysis on finite lattice point sets: M-convexity in its
//! exchange-axiom and polyhedral forms, Minkowski sums, the union-reflection
//! construction, exact hulls and saturation.

mod hull;
pub mod lp;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

pub use hull::{Inequality, LatticePolytope};

use crate::error::{Error, Result};
use crate::lattice::WeightVector;
use crate::points::PointSet;

/// Single-sided exchange axiom: for all `x, y ∈ S` and every `i` with
/// `x_i > y_i` there is `j` with `x_j < y_j` and `x − e_i + e_j ∈ S`.
///
/// Sets without a common coordinate sum are never M-convex.
pub fn is_mconvex_exchange(s: &PointSet) -> bool {
    if s.is_empty() || s.common_sum().is_none() {
        return false;
    }
    let points = s.to_vec();
    points.par_iter().all(|x| {
        points.iter().all(|y| {
            let (a, b) = (x.entries(), y.entries());
            (0..a.len()).filter(|&i| a[i] > b[i]).all(|i| {
                (0..a.len()).filter(|&j| a[j] < b[j]).any(|j| {
                    let mut z = a.to_vec();
                    z[i] -= 1;
                    z[j] += 1;
                    s.contains(&WeightVector::new(z).expect("non-empty"))
                })
            })
        })
    })
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    Ok(())
}

/// `S ∪ (S + e_i − e_j) = S + {0, e_i − e_j}`.
pub fn minkowski_root_segment(s: &PointSet, i: usize, j: usize) -> Result<PointSet> {
    check_index(i, s.dim())?;
    check_index(j, s.dim())?;
    if i == j {
        return Err(Error::DegenerateRoot(i));
    }
    let shifted = s.map(|p| p.add_root(i, j).expect("indices checked"));
    s.union(&shifted)
}

/// `A + B = {a + b}`.
pub fn minkowski_sum(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    if a.dim() != b.dim() {
        return Err(Error::LengthMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let mut out = PointSet::empty(a.dim());
    for p in a {
        for q in b {
            out.insert(p.checked_add(q)?)?;
        }
    }
    Ok(out)
}

/// `S ∪ σ_{i,j}(S)` for an M-convex `S` with
/// `σ_{i,j}(S) ⊆ S ∪ (S + e_i − e_j)`; the result is again M-convex.
///
/// Fails with [`Error::NotMConvex`] or with the first point of `σ_{i,j}(S)`
/// violating the inclusion.
pub fn union_reflection(s: &PointSet, i: usize, j: usize) -> Result<PointSet> {
    let n = s.dim();
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(Error::BadTransposition { i, j, len: n });
    }
    if !is_mconvex_exchange(s) {
        return Err(Error::NotMConvex);
    }
    let reflected = s.map(|p| p.swap_unchecked(i, j));
    for w in &reflected {
        let back = w.add_root(j, i).expect("indices checked");
        if !s.contains(w) && !s.contains(&back) {
            return Err(Error::ReflectionHypothesis {
                i,
                j,
                witness: w.clone(),
            });
        }
    }
    s.union(&reflected)
}

/// Exact convex hull with vertices, edges and facets.
pub fn convex_hull(s: &PointSet) -> Result<LatticePolytope> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(hull::hull(s))
}

/// Whether `x ∈ conv(S)`, decided by exact LP feasibility of
/// `Σ λ_k p_k = x`, `Σ λ_k = 1`, `λ ≥ 0`.
pub fn contains_point(s: &PointSet, x: &[BigRational]) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if x.len() != s.dim() {
        return Err(Error::LengthMismatch {
            expected: s.dim(),
            got: x.len(),
        });
    }
    let points = s.to_vec();
    let mut a: Vec<Vec<BigRational>> = (0..s.dim())
        .map(|c| {
            points
                .iter()
                .map(|p| BigRational::from_integer(BigInt::from(p.entries()[c])))
                .collect()
        })
        .collect();
    a.push(vec![BigRational::one(); points.len()]);
    let mut b = x.to_vec();
    b.push(BigRational::one());
    Ok(lp::feasible_point(&a, &b, points.len()).is_some())
}

/// Integer points of `conv(S)`.
///
/// Candidates range over the bounding box (on the sum hyperplane when the
/// points share a coordinate sum) and are filtered by the exact facet
/// description of the hull, which agrees with [`contains_point`].
pub fn lattice_points(s: &PointSet) -> Result<PointSet> {
    let hull = convex_hull(s)?;
    let n = s.dim();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for p in s {
        for (c, &x) in p.entries().iter().enumerate() {
            lo[c] = lo[c].min(x);
            hi[c] = hi[c].max(x);
        }
    }
    let sum = s.common_sum();
    let free = if sum.is_some() { n - 1 } else { n };

    let mut candidates: Vec<Vec<i64>> = vec![Vec::new()];
    for c in 0..free {
        candidates = candidates
            .into_iter()
            .flat_map(|prefix| {
                (lo[c]..=hi[c]).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    let found: Vec<WeightVector> = candidates
        .into_par_iter()
        .filter_map(|mut v| {
            if let Some(total) = sum {
                let last = total - v.iter().sum::<i64>();
                if last < lo[n - 1] || last > hi[n - 1] {
                    return None;
                }
                v.push(last);
            }
            let w = WeightVector::new(v).expect("n >= 1");
            hull.contains_lattice_point(&w).then_some(w)
        })
        .collect();
    PointSet::from_points(found)
}

/// `lattice_points(S) = S`.
pub fn is_saturated(s: &PointSet) -> Result<bool> {
    Ok(lattice_points(s)?.len() == s.len())
}

/// Every edge of the polytope is parallel to some `e_i − e_j`.
pub fn is_generalized_permutahedron(p: &LatticePolytope) -> bool {
    p.edge_vectors().all(|v| hull::is_root_direction(&v))
}

/// Saturated with a generalized-permutahedron hull.
pub fn is_mconvex_geometric(s: &PointSet) -> bool {
    if s.is_empty() || s.common_sum().is_none() {
        return false;
    }
    let hull = convex_hull(s).expect("non-empty");
    is_generalized_permutahedron(&hull) && is_saturated(s).expect("non-empty")
}

/// `f(A) = max_{x ∈ S} Σ_{i ∈ A} x_i` for every subset `A ⊆ {1..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunctionProfile {
    n: usize,
    /// Indexed by bitmask, bit `k` standing for coordinate `k + 1`;
    /// `values[0] = 0`.
    values: Vec<i64>,
}

pub const MAX_SUPPORT_FUNCTION_DIM: usize = 20;

impl SupportFunctionProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `f(A)` for a 1-based subset.
    pub fn value(&self, subset: &[usize]) -> Result<i64> {
        let mut mask = 0usize;
        for &i in subset {
            check_index(i, self.n)?;
            mask |= 1 << (i - 1);
        }
        Ok(self.values[mask])
    }

    /// Non-empty subsets with their values, ordered by bitmask.
    pub fn values(&self) -> BTreeMap<Vec<usize>, i64> {
        (1..self.values.len())
            .map(|m| (mask_to_subset(m, self.n), self.values[m]))
            .collect()
    }

    /// `f(A) + f(B) ≥ f(A ∪ B) + f(A ∩ B)` for all `A, B`, checked through
    /// the equivalent local form `f(A+i) + f(A+j) ≥ f(A+i+j) + f(A)`.
    pub fn is_submodular(&self) -> bool {
        let f = &self.values;
        (0..f.len()).into_par_iter().all(|a| {
            (0..self.n).all(|i| {
                (i + 1..self.n).all(|j| {
                    let (bi, bj) = (1 << i, 1 << j);
                    a & (bi | bj) != 0 || f[a | bi] + f[a | bj] >= f[a | bi | bj] + f[a]
                })
            })
        })
    }
}

fn mask_to_subset(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect()
}

impl Serialize for SupportFunctionProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            subset: Vec<usize>,
            value: i64,
        }
        let entries: Vec<Entry> = (1..self.values.len())
            .map(|m| Entry {
                subset: mask_to_subset(m, self.n),
                value: self.values[m],
            })
            .collect();
        entries.serialize(serializer)
    }
}

pub fn support_function(s: &PointSet) -> Result<SupportFunctionProfile> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = s.dim();
    if n > MAX_SUPPORT_FUNCTION_DIM {
        return Err(Error::TooManyCoordinates(n));
    }
    let points = s.to_vec();
    let values = (0..1usize << n)
        .into_par_iter()
        .map(|mask| {
            if mask == 0 {
                return 0;
            }
            points
                .iter()
                .map(|p| {
                    p.entries()
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &x)| x)
                        .sum::<i64>()
                })
                .max()
                .expect("non-empty")
        })
        .collect();
    Ok(SupportFunctionProfile { n, values })
}

pub fn is_submodular(profile: &SupportFunctionProfile) -> bool {
    profile.is_submodular()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};
    use std::collections::BTreeSet;

    fn set(rows: &[&[i64]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    fn e020() -> PointSet {
        set(&[&[0, 2, 0], &[2, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
    }

    fn wv(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| integer(x)).collect()
    }

    #[test]
    fn exchange_axiom() {
        assert!(is_mconvex_exchange(&e020()));
        assert!(!is_mconvex_exchange(&set(&[&[2, 0, 0], &[0, 1, 1]])));
        assert!(is_mconvex_exchange(&set(&[&[3, -4, 7]])));
        assert!(!is_mconvex_exchange(&set(&[&[1, 0], &[1, 1]])));
    }

    #[test]
    fn root_segments() {
        let s = minkowski_root_segment(&set(&[&[0, 0]]), 1, 2).unwrap();
        assert_eq!(s, set(&[&[0, 0], &[1, -1]]));
        let s = minkowski_root_segment(&e020(), 2, 1).unwrap();
        assert_eq!(s.len(), 7);
        assert!(is_mconvex_exchange(&s));
        assert!(is_mconvex_geometric(&s));
        assert_eq!(minkowski_root_segment(&e020(), 2, 2), Err(Error::DegenerateRoot(2)));
        assert!(minkowski_root_segment(&e020(), 0, 2).is_err());
    }

    #[test]
    fn reflections() {
        let s = set(&[&[1, 0], &[0, 1]]);
        assert_eq!(union_reflection(&s, 1, 2).unwrap(), s);

        let s200 = set(&[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        assert_eq!(union_reflection(&s200, 2, 1).unwrap(), e020());
        match union_reflection(&s200, 1, 2) {
            Err(Error::ReflectionHypothesis { witness, .. }) => assert_eq!(witness, wv(&[0, 1, 1])),
            other => panic!("{other:?}"),
        }
        assert_eq!(union_reflection(&set(&[&[2, 0, 0], &[0, 1, 1]]), 1, 2), Err(Error::NotMConvex));
        assert!(union_reflection(&s200, 1, 1).is_err());
    }

    #[test]
    fn hull_of_e020() {
        let p = convex_hull(&e020()).unwrap();
        let verts: BTreeSet<WeightVector> = p.vertices().iter().cloned().collect();
        let want: BTreeSet<WeightVector> = [[2, 0, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1]].iter().map(|v| wv(v)).collect();
        assert_eq!(verts, want);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.edges().len(), 4);
        let mut dirs: Vec<(WeightVector, WeightVector)> = p
            .edges()
            .iter()
            .map(|&(a, b)| (p.vertices()[a].clone(), p.vertices()[b].clone()))
            .collect();
        dirs.sort();
        assert_eq!(
            dirs,
            vec![
                (wv(&[0, 1, 1]), wv(&[0, 2, 0])),
                (wv(&[0, 1, 1]), wv(&[1, 0, 1])),
                (wv(&[0, 2, 0]), wv(&[2, 0, 0])),
                (wv(&[1, 0, 1]), wv(&[2, 0, 0])),
            ]
        );
        assert!(is_generalized_permutahedron(&p));
        assert!(p.contains(&ints(&[1, 1, 0])));
        assert!(!p.contains(&ints(&[0, 0, 2])));
        // every vertex is tight on at least dim independent facets
        for v in p.vertices() {
            assert!(p.facets().iter().filter(|f| f.is_tight_at(v)).count() >= p.dim());
        }
    }

    #[test]
    fn low_dimensional_hulls() {
        let p = convex_hull(&set(&[&[4, 5]])).unwrap();
        assert_eq!(p.dim(), 0);
        assert!(p.edges().is_empty());
        assert!(is_generalized_permutahedron(&p));

        let p = convex_hull(&set(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.edges(), &[(0, 1)]);
        assert_eq!(p.edge_vectors().next().unwrap(), wv(&[1, -1]));

        let p = convex_hull(&set(&[&[0, 0], &[1, 2]])).unwrap();
        assert!(!is_generalized_permutahedron(&p));
        assert!(convex_hull(&PointSet::empty(2)).is_err());
    }

    #[test]
    fn full_dimensional_cube() {
        let mut pts = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    pts.push(wv(&[a, b, c]));
                }
            }
        }
        pts.push(wv(&[1, 1, 0]));
        let s = PointSet::from_points(pts).unwrap();
        let p = convex_hull(&s).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.edges().len(), 12);
        assert_eq!(p.facets().len(), 6);
        assert!(p.equations().is_empty());
        assert!(is_saturated(&s).unwrap());
    }

    #[test]
    fn lp_membership() {
        let s = e020();
        assert!(contains_point(&s, &ints(&[1, 1, 0])).unwrap());
        assert!(!contains_point(&s, &ints(&[0, 0, 2])).unwrap());
        assert!(contains_point(&s, &[ratio(1, 2), ratio(1, 1), ratio(1, 2)]).unwrap());
        for p in &s {
            assert!(contains_point(&s, &ints(p.entries())).unwrap());
        }
        assert!(contains_point(&s, &ints(&[1, 1])).is_err());
    }

    #[test]
    fn saturation() {
        assert_eq!(lattice_points(&e020()).unwrap(), e020());
        assert_eq!(lattice_points(&set(&[&[2, 0], &[0, 2]])).unwrap(), set(&[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(lattice_points(&set(&[&[3, 1]])).unwrap(), set(&[&[3, 1]]));
        assert!(is_saturated(&e020()).unwrap());
        assert!(!is_saturated(&set(&[&[2, 0], &[0, 2]])).unwrap());
        // non-constant sum: a triangle in the plane
        let t = set(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(lattice_points(&t).unwrap().len(), 6);
    }

    #[test]
    fn geometric_checker() {
        assert!(is_mconvex_geometric(&e020()));
        assert!(!is_mconvex_geometric(&set(&[&[2, 0], &[0, 2]])));
        assert!(is_mconvex_geometric(&set(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])));
    }

    #[test]
    fn support_functions() {
        let f = support_function(&e020()).unwrap();
        let expect = [
            (vec![1], 2),
            (vec![2], 2),
            (vec![3], 1),
            (vec![1, 2], 2),
            (vec![1, 3], 2),
            (vec![2, 3], 2),
            (vec![1, 2, 3], 2),
        ];
        for (a, v) in expect {
            assert_eq!(f.value(&a).unwrap(), v, "{a:?}");
        }
        assert!(f.is_submodular());

        let f = support_function(&set(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(f.values().into_iter().collect::<Vec<_>>(), vec![(vec![1], 2), (vec![1, 2], 2), (vec![2], 2)]);
        assert!(is_submodular(&f));

        let f = support_function(&set(&[&[1, -2, 5]])).unwrap();
        assert!(f.is_submodular());
        assert_eq!(f.value(&[2, 3]).unwrap(), 3);

        let big = PointSet::singleton(WeightVector::zero(21));
        assert_eq!(support_function(&big), Err(Error::TooManyCoordinates(21)));
    }

    #[test]
    fn local_submodularity_matches_pairwise_definition() {
        let sets = [
            e020(),
            set(&[&[2, 0, 0], &[0, 1, 1]]),
            set(&[&[3, 0, 0, 0], &[0, 0, 1, 2], &[1, 1, 1, 0]]),
            set(&[&[0, 0, 2], &[2, 0, 0], &[0, 2, 0]]),
        ];
        for s in &sets {
            let f = support_function(s).unwrap();
            let n = f.n();
            let g = |m: usize| if m == 0 { 0 } else { f.value(&mask_to_subset(m, n)).unwrap() };
            let mut pairwise = true;
            for a in 0..1usize << n {
                for b in 0..1usize << n {
                    pairwise &= g(a) + g(b) >= g(a | b) + g(a & b);
                }
            }
            assert_eq!(pairwise, f.is_submodular());
        }
    }

    #[test]
    fn polytope_json() {
        let p = convex_hull(&set(&[&[1, 0], &[0, 1]])).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"vertices":[[0,1],[1,0]],"edges":[[0,1]],"facets":[{"normal":["-1/1","0/1"],"offset":"0/1"},{"normal":["1/1","0/1"],"offset":"1/1"}]}"#
        );
    }
}
