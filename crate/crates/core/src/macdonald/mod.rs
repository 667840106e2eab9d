//! Non-symmetric Macdonald polynomials `E_μ` at rational `(q, t)`: their
//! supports by the column-shift / rotation recursion, exact coefficients by
//! the non-attacking filling formula, Newton and moment polytopes, and a
//! replayable certificate that every support is M-convex.

mod poly;
mod stats;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use poly::{rational_pow, QTParams, SparsePolynomial};
pub use stats::{HhlStatistics, Statistics};

use crate::bruhat;
use crate::error::{Error, Result};
use crate::fillings::enumerate_nonattacking;
use crate::geometry::{self, LatticePolytope};
use crate::lattice::{Composition, Diagram, WeightVector};
use crate::points::{PointSet, SupportSet};

/// `e_1 + rotate_right(S)`: the support of `E_{π(ν)}` from that of `E_ν`.
pub fn rotate_support(s: &SupportSet) -> SupportSet {
    s.map(|p| {
        let mut v = p.rotate_right().entries().to_vec();
        v[0] += 1;
        WeightVector::new(v).expect("n >= 1")
    })
}

/// One step back in the recursion, together with the step leading from
/// the predecessor to `mu`.
fn predecessor(mu: &Composition) -> Option<(Composition, Step)> {
    let parts = mu.parts();
    let l = mu.first_nonzero()?;
    if l == 1 {
        let mut prev: Vec<usize> = parts[1..].to_vec();
        prev.push(parts[0] - 1);
        Some((Composition::new(prev).expect("non-empty"), Step::Rotate))
    } else {
        let prev = mu.simple_transposition(l - 1).expect("1 <= l-1 < n");
        Some((prev, Step::ShiftColumn { column: l }))
    }
}

/// Support of `E_μ` via the recursion: `{0}` for `μ = 0`;
/// `e_1 + rotate_right(supp(μ_2, …, μ_n, μ_1 − 1))` when `μ_1 > 0`;
/// otherwise `S ∪ s_{ℓ−1}(S)` with `S` the support after moving the first
/// non-empty column `ℓ` one step left. No fillings are enumerated.
pub fn support_by_recursion(mu: &Composition) -> SupportSet {
    let mut chain = Vec::new();
    let mut cur = mu.clone();
    while let Some((prev, step)) = predecessor(&cur) {
        chain.push(step);
        cur = prev;
    }
    let mut s = PointSet::singleton(WeightVector::zero(mu.len()));
    for step in chain.into_iter().rev() {
        s = match step {
            Step::Rotate => rotate_support(&s),
            Step::ShiftColumn { column } => {
                let reflected = s.map(|p| p.swap_unchecked(column - 1, column));
                s.union(&reflected).expect("same length")
            }
        };
    }
    s
}

/// Support of `E_μ` for any `μ ∈ ℤⁿ`, using `E_μ = (x_1⋯x_n)^m E_{μ′}`.
pub fn support(mu: &WeightVector) -> SupportSet {
    let (m, base) = mu.normalize();
    support_by_recursion(&base).map(|p| p.shift(m))
}

/// A recursion step, read forwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    /// `supp(E_{π(ν)}) = e_1 + rotate_right(supp(E_ν))`.
    Rotate,
    /// Move column `column − 1` to `column`:
    /// `S ↦ S ∪ σ_{column−1, column}(S)` by union reflection.
    ShiftColumn { column: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    #[serde(flatten)]
    pub step: Step,
    pub from: Composition,
    pub to: Composition,
    pub support_size: usize,
}

/// Forward derivation of `supp(E_μ)` from `{0}` in which every column
/// shift is an instance of union reflection with a verified hypothesis and
/// every intermediate set is M-convex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MConvexCertificate {
    pub mu: Composition,
    pub steps: Vec<CertificateStep>,
    pub support: SupportSet,
}

impl MConvexCertificate {
    pub fn rotations(&self) -> usize {
        self.steps.iter().filter(|s| s.step == Step::Rotate).count()
    }

    pub fn column_shifts(&self) -> usize {
        self.steps.len() - self.rotations()
    }

    /// Re-run every step from `{0}`, re-checking all hypotheses, and
    /// return the support reached.
    pub fn replay(&self) -> Result<SupportSet> {
        let n = self.mu.len();
        let mut shape = Composition::zero(n);
        let mut s = PointSet::singleton(WeightVector::zero(n));
        for (k, st) in self.steps.iter().enumerate() {
            let fail = |reason: String| Error::Certificate { step: k, reason };
            if st.from != shape {
                return Err(fail(format!("expected to start from {shape}, found {}", st.from)));
            }
            let (next_shape, next) = apply_step(&shape, &s, st.step).map_err(|e| fail(e.to_string()))?;
            if next_shape != st.to || next.len() != st.support_size {
                return Err(fail(format!("step does not lead to {}", st.to)));
            }
            if !geometry::is_mconvex_exchange(&next) {
                return Err(fail(format!("support of {} is not M-convex", st.to)));
            }
            shape = next_shape;
            s = next;
        }
        if shape != self.mu || s != self.support {
            return Err(Error::Certificate {
                step: self.steps.len(),
                reason: format!("replay ends at {shape}, not {}", self.mu),
            });
        }
        Ok(s)
    }
}

fn apply_step(shape: &Composition, s: &SupportSet, step: Step) -> Result<(Composition, SupportSet)> {
    match step {
        Step::Rotate => {
            let next = shape.to_weight().pi().to_composition()?;
            Ok((next, rotate_support(s)))
        }
        Step::ShiftColumn { column } => {
            let n = shape.len();
            if column < 2 || column > n || shape.height(column) != 0 || shape.first_nonzero() != Some(column - 1) {
                return Err(Error::Invariant(format!(
                    "column {column} cannot receive the first column of {shape}"
                )));
            }
            let next = shape.simple_transposition(column - 1)?;
            Ok((next, geometry::union_reflection(s, column, column - 1)?))
        }
    }
}

/// Build and check the certificate for `supp(E_μ)`; the final support
/// also passes the polyhedral M-convexity check.
pub fn certify_mconvex(mu: &Composition) -> Result<MConvexCertificate> {
    let mut chain = Vec::new();
    let mut cur = mu.clone();
    while let Some((prev, step)) = predecessor(&cur) {
        chain.push((prev.clone(), step, cur.clone()));
        cur = prev;
    }
    let mut s = PointSet::singleton(WeightVector::zero(mu.len()));
    let mut steps = Vec::with_capacity(chain.len());
    for (k, (from, step, to)) in chain.into_iter().rev().enumerate() {
        let fail = |reason: String| Error::Certificate { step: k, reason };
        let (shape, next) = apply_step(&from, &s, step).map_err(|e| fail(e.to_string()))?;
        debug_assert_eq!(shape, to);
        if !geometry::is_mconvex_exchange(&next) {
            return Err(fail(format!("support of {to} is not M-convex")));
        }
        s = next;
        steps.push(CertificateStep {
            step,
            from,
            to,
            support_size: s.len(),
        });
    }
    if !geometry::is_mconvex_geometric(&s) {
        return Err(Error::Certificate {
            step: steps.len(),
            reason: format!("hull of the support of {mu} is not a saturated generalized permutahedron"),
        });
    }
    Ok(MConvexCertificate {
        mu: mu.clone(),
        steps,
        support: s,
    })
}

/// `Newton(E_μ) = conv(supp(E_μ))`.
pub fn newton_polytope(mu: &WeightVector) -> LatticePolytope {
    geometry::convex_hull(&support(mu)).expect("supports are non-empty")
}

/// `conv{λ : λ ≤ μ}`.
pub fn moment_polytope(mu: &WeightVector) -> LatticePolytope {
    bruhat::ideal_hull(mu)
}

/// `E_μ` at the given `(q, t)`, summed over non-attacking fillings `σ`:
/// `x^σ q^{maj} t^{coinv} ∏ (1 − t) / (1 − q^{leg+1} t^{arm+1})`, the
/// product over boxes whose label differs from the one below.
pub fn coefficients(mu: &Composition, params: &QTParams, stats: &dyn Statistics) -> SparsePolynomial {
    let n = mu.len();
    let diagram = Diagram::new(mu);
    let (q, t) = (params.q(), params.t());
    let one = BigRational::one();
    let factors: Vec<BigRational> = diagram
        .cells()
        .iter()
        .map(|&u| {
            let leg = stats.leg(mu, u) as i64;
            let arm = stats.arm(mu, u) as i64;
            (&one - t) / (&one - rational_pow(q, leg + 1) * rational_pow(t, arm + 1))
        })
        .collect();

    let fillings = enumerate_nonattacking(mu);
    let weighted: Vec<(WeightVector, BigRational)> = fillings
        .par_iter()
        .map(|f| {
            let mut w = rational_pow(q, stats.maj(&diagram, f) as i64) * rational_pow(t, stats.coinv(&diagram, f) as i64);
            for (k, (&u, &l)) in diagram.cells().iter().zip(f.labels()).enumerate() {
                let below = u.below().expect("row >= 1");
                let lb = if below.row == 0 {
                    below.column
                } else {
                    f.labels()[diagram.index_of(below).expect("in diagram")]
                };
                if l != lb {
                    w *= &factors[k];
                }
            }
            (f.multiplicity(), w)
        })
        .collect();

    let mut p = SparsePolynomial::zero(n);
    for (e, w) in weighted {
        p.add_term(e, w).expect("same length");
    }
    p
}

/// `E_μ` for any `μ ∈ ℤⁿ`, as `(x_1⋯x_n)^m E_{μ′}`.
pub fn polynomial(mu: &WeightVector, params: &QTParams, stats: &dyn Statistics) -> SparsePolynomial {
    let (m, base) = mu.normalize();
    coefficients(&base, params, stats).shift_all(m)
}

/// `ψ(x^a) = q^{−a_n} x_1^{a_n} x_2^{a_1} ⋯ x_n^{a_{n−1}}`.
pub fn psi_op(p: &SparsePolynomial, q: &BigRational) -> SparsePolynomial {
    p.psi(q)
}

/// `E_{π(μ)} = q^{μ_n} x_1 ψ(E_μ)`, both sides computed exactly.
pub fn verify_knop_sahi(mu: &Composition, params: &QTParams, stats: &dyn Statistics) -> bool {
    let n = mu.len();
    let lifted = mu.to_weight().pi().to_composition().expect("π keeps entries non-negative");
    let lhs = coefficients(&lifted, params, stats);
    let last = mu.parts()[n - 1] as i64;
    let rhs = psi_op(&coefficients(mu, params, stats), params.q())
        .scale(&rational_pow(params.q(), last))
        .shift(&WeightVector::unit(n, 1).expect("n >= 1"))
        .expect("same length");
    lhs == rhs
}
