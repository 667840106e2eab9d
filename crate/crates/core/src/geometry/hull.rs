//! Exact convex hulls of lattice point sets.
//!
//! Points are projected injectively onto a coordinate subspace of their
//! affine hull, where the facets are found with the double description
//! method in exact integer arithmetic. Vertices and edges are then read off
//! the face lattice: a point is a vertex when its tight facet normals have
//! full rank, and two vertices span an edge when their common tight facets
//! have rank one less.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::lattice::WeightVector;
use crate::points::PointSet;
use crate::rational::format_rational;

/// `normal · x ≤ offset` (or `=` for affine-hull equations).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Inequality {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Inequality {
    fn value(&self, x: &[BigRational]) -> BigRational {
        self.normal
            .iter()
            .zip(x)
            .map(|(&a, xi)| BigRational::from_integer(BigInt::from(a)) * xi)
            .sum()
    }

    fn int_value(&self, x: &[i64]) -> i128 {
        self.normal
            .iter()
            .zip(x)
            .map(|(&a, &xi)| a as i128 * xi as i128)
            .sum()
    }

    pub fn is_tight_at(&self, x: &WeightVector) -> bool {
        self.int_value(x.entries()) == self.offset as i128
    }
}

/// A polytope with lattice vertices, described both by vertices and edges
/// and by facet inequalities valid on its affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<WeightVector>,
    edges: Vec<(usize, usize)>,
    facets: Vec<Inequality>,
    equations: Vec<Inequality>,
    directions: Vec<Vec<i64>>,
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[WeightVector] {
        &self.vertices
    }

    /// Pairs of vertex indices, `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Facet inequalities `normal · x ≤ offset`, to be read together with
    /// [`LatticePolytope::equations`].
    pub fn facets(&self) -> &[Inequality] {
        &self.facets
    }

    /// Equations `normal · x = offset` cutting out the affine hull.
    pub fn equations(&self) -> &[Inequality] {
        &self.equations
    }

    /// An integer basis of the direction space of the affine hull.
    pub fn directions(&self) -> &[Vec<i64>] {
        &self.directions
    }

    pub fn edge_vectors(&self) -> impl Iterator<Item = WeightVector> + '_ {
        self.edges.iter().map(|&(a, b)| {
            self.vertices[b]
                .checked_sub(&self.vertices[a])
                .expect("same length")
        })
    }

    /// Membership through the inequality description.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        if x.len() != self.ambient_dim {
            return false;
        }
        self.equations
            .iter()
            .all(|e| e.value(x) == BigRational::from_integer(BigInt::from(e.offset)))
            && self
                .facets
                .iter()
                .all(|f| f.value(x) <= BigRational::from_integer(BigInt::from(f.offset)))
    }

    pub fn contains_lattice_point(&self, x: &WeightVector) -> bool {
        let e = x.entries();
        x.len() == self.ambient_dim
            && self.equations.iter().all(|q| q.int_value(e) == q.offset as i128)
            && self.facets.iter().all(|f| f.int_value(e) <= f.offset as i128)
    }
}

impl Serialize for LatticePolytope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct FacetRepr {
            normal: Vec<String>,
            offset: String,
        }
        let int = |v: i64| format_rational(&BigRational::from_integer(BigInt::from(v)));
        let facets: Vec<FacetRepr> = self
            .facets
            .iter()
            .map(|f| FacetRepr {
                normal: f.normal.iter().map(|&a| int(a)).collect(),
                offset: int(f.offset),
            })
            .collect();
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(a, b)| [a, b]).collect();
        let mut s = serializer.serialize_struct("LatticePolytope", 3)?;
        s.serialize_field("vertices", &self.vertices)?;
        s.serialize_field("edges", &edges)?;
        s.serialize_field("facets", &facets)?;
        s.end()
    }
}

fn gcd_normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn to_i64(x: i128) -> i64 {
    x.to_i64().expect("hull coefficient exceeds i64")
}

/// Reduced row echelon form over the rationals; returns pivot columns.
fn rref(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v /= &lead;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Scale a rational vector to a primitive integer vector.
fn primitive(v: &[BigRational]) -> Vec<i128> {
    let lcm = v
        .iter()
        .fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let mut out: Vec<i128> = v
        .iter()
        .map(|x| (x.numer() * (&lcm / x.denom())).to_i128().expect("fits in i128"))
        .collect();
    gcd_normalize(&mut out);
    out
}

fn rat(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub(crate) fn rank(rows: &[Vec<i128>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    rref(&mut m).len()
}

#[derive(Clone)]
struct Ray {
    v: Vec<i128>,
    /// Sorted indices of processed constraints tight at this ray.
    zero: Vec<usize>,
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_superset(big: &[usize], small: &[usize]) -> bool {
    intersect(big, small).len() == small.len()
}

/// Facets `a · y ≤ b` of the full-dimensional hull of `points ⊂ ℤ^d`,
/// returned as `(b, a)`.
fn full_dim_facets(points: &[Vec<i128>], d: usize) -> Vec<Vec<i128>> {
    // constraint k: (b, a) · (1, −y_k) ≥ 0
    let rows: Vec<Vec<i128>> = points
        .iter()
        .map(|y| std::iter::once(1).chain(y.iter().map(|&c| -c)).collect())
        .collect();

    let mut initial: Vec<usize> = Vec::new();
    for k in 0..rows.len() {
        let mut trial: Vec<Vec<i128>> = initial.iter().map(|&i| rows[i].clone()).collect();
        trial.push(rows[k].clone());
        if rank(&trial) == trial.len() {
            initial.push(k);
            if initial.len() == d + 1 {
                break;
            }
        }
    }
    assert_eq!(initial.len(), d + 1, "points must span the space");

    // Rays of the simplicial cone are the columns of the inverse.
    let size = d + 1;
    let mut aug: Vec<Vec<BigRational>> = initial
        .iter()
        .enumerate()
        .map(|(r, &k)| {
            let mut row: Vec<BigRational> = rows[k].iter().map(|&x| rat(x)).collect();
            row.extend((0..size).map(|c| rat((c == r) as i128)));
            row
        })
        .collect();
    rref(&mut aug);
    let mut rays: Vec<Ray> = (0..size)
        .map(|c| {
            let col: Vec<BigRational> = (0..size).map(|r| aug[r][size + c].clone()).collect();
            let v = primitive(&col);
            let mut zero: Vec<usize> = initial
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != c)
                .map(|(_, &k)| k)
                .collect();
            zero.sort_unstable();
            Ray { v, zero }
        })
        .collect();

    for k in 0..rows.len() {
        if initial.contains(&k) {
            continue;
        }
        let values: Vec<i128> = rays.iter().map(|r| dot(&r.v, &rows[k])).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (ray, &s) in rays.iter().zip(&values) {
            if s >= 0 {
                let mut r = ray.clone();
                if s == 0 {
                    let pos = r.zero.binary_search(&k).unwrap_err();
                    r.zero.insert(pos, k);
                }
                next.push(r);
            }
        }
        for (p, &sp) in rays.iter().zip(&values) {
            if sp <= 0 {
                continue;
            }
            for (q, &sq) in rays.iter().zip(&values) {
                if sq >= 0 {
                    continue;
                }
                let common = intersect(&p.zero, &q.zero);
                if common.len() + 1 < d {
                    continue;
                }
                let adjacent = rays.iter().all(|w| {
                    std::ptr::eq(w, p) || std::ptr::eq(w, q) || !is_superset(&w.zero, &common)
                });
                if !adjacent {
                    continue;
                }
                let mut v: Vec<i128> = p
                    .v
                    .iter()
                    .zip(&q.v)
                    .map(|(&a, &b)| sp * b - sq * a)
                    .collect();
                gcd_normalize(&mut v);
                let mut zero = common;
                let pos = zero.binary_search(&k).unwrap_err();
                zero.insert(pos, k);
                next.push(Ray { v, zero });
            }
        }
        rays = next;
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// Exact convex hull of a non-empty point set.
pub(crate) fn hull(s: &PointSet) -> LatticePolytope {
    let n = s.dim();
    let points: Vec<&WeightVector> = s.iter().collect();
    let p0 = points[0];

    let mut diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| {
            p.entries()
                .iter()
                .zip(p0.entries())
                .map(|(&a, &b)| rat((a - b) as i128))
                .collect()
        })
        .collect();
    let pivots = if diffs.is_empty() { Vec::new() } else { rref(&mut diffs) };
    let d = pivots.len();

    let directions: Vec<Vec<i64>> = diffs
        .iter()
        .map(|row| primitive(row).into_iter().map(to_i64).collect())
        .collect();

    let mut equations = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut w = vec![BigRational::zero(); n];
        w[free] = rat(1);
        for (r, &pc) in pivots.iter().enumerate() {
            w[pc] = -diffs[r][free].clone();
        }
        let normal: Vec<i64> = primitive(&w).into_iter().map(to_i64).collect();
        let offset = normal.iter().zip(p0.entries()).map(|(a, b)| a * b).sum();
        equations.push(Inequality { normal, offset });
    }
    equations.sort();

    if d == 0 {
        return LatticePolytope {
            ambient_dim: n,
            vertices: vec![p0.clone()],
            edges: Vec::new(),
            facets: Vec::new(),
            equations,
            directions,
        };
    }

    let projected: Vec<Vec<i128>> = points
        .iter()
        .map(|p| pivots.iter().map(|&c| p.entries()[c] as i128).collect())
        .collect();
    let mut facets: Vec<Inequality> = full_dim_facets(&projected, d)
        .into_iter()
        .map(|ray| {
            let mut normal = vec![0i64; n];
            for (k, &c) in pivots.iter().enumerate() {
                normal[c] = to_i64(ray[k + 1]);
            }
            Inequality {
                normal,
                offset: to_i64(ray[0]),
            }
        })
        .collect();
    facets.sort();
    facets.dedup();

    let normals: Vec<Vec<i128>> = facets
        .iter()
        .map(|f| pivots.iter().map(|&c| f.normal[c] as i128).collect())
        .collect();
    let tight: Vec<Vec<usize>> = points
        .iter()
        .map(|p| {
            (0..facets.len())
                .filter(|&f| facets[f].is_tight_at(p))
                .collect()
        })
        .collect();
    let select = |ids: &[usize]| -> Vec<Vec<i128>> { ids.iter().map(|&f| normals[f].clone()).collect() };

    let vertex_ids: Vec<usize> = (0..points.len())
        .filter(|&k| rank(&select(&tight[k])) == d)
        .collect();
    let vertices: Vec<WeightVector> = vertex_ids.iter().map(|&k| points[k].clone()).collect();
    let mut edges = Vec::new();
    for a in 0..vertex_ids.len() {
        for b in (a + 1)..vertex_ids.len() {
            let common = intersect(&tight[vertex_ids[a]], &tight[vertex_ids[b]]);
            if rank(&select(&common)) + 1 == d {
                edges.push((a, b));
            }
        }
    }

    LatticePolytope {
        ambient_dim: n,
        vertices,
        edges,
        facets,
        equations,
        directions,
    }
}

/// Whether the vector is a non-zero multiple of some `e_i − e_j`.
pub(crate) fn is_root_direction(v: &WeightVector) -> bool {
    let nz: Vec<i64> = v.entries().iter().copied().filter(|&x| x != 0).collect();
    nz.len() == 2 && nz[0] == -nz[1]
}
