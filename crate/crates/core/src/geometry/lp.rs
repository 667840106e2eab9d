//! Exact two-phase simplex over `BigRational` with Bland's rule.
//!
//! Problems are in equality form: `A x = b`, `x ≥ 0`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        x: Vec<BigRational>,
    },
}

struct Tableau {
    /// Rows of `B⁻¹ [A | b]`.
    rows: Vec<Vec<BigRational>>,
    /// Reduced costs, last entry is minus the objective value.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        self.basis[r] = c;
    }

    /// Maximise over the columns `< limit`. Returns false when unbounded.
    fn run(&mut self, limit: usize) -> bool {
        let rhs = self.width();
        loop {
            let entering = (0..limit).find(|&j| self.obj[j].is_positive());
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, BigRational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn solution(&self, vars: usize) -> Vec<BigRational> {
        let rhs = self.width();
        let mut x = vec![BigRational::zero(); vars];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < vars {
                x[b] = self.rows[r][rhs].clone();
            }
        }
        x
    }
}

/// Phase one. On success returns a tableau whose basis holds no artificial
/// variables, with redundant rows removed.
fn phase_one(a: &[Vec<BigRational>], b: &[BigRational], vars: usize) -> Option<Tableau> {
    let m = a.len();
    let width = vars + m;
    let mut rows = Vec::with_capacity(m);
    for (k, (row, rhs)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), vars, "constraint row width");
        let flip = rhs.is_negative();
        let mut t: Vec<BigRational> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        t.extend((0..m).map(|j| {
            if j == k {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        t.push(if flip { -rhs.clone() } else { rhs.clone() });
        rows.push(t);
    }
    let mut obj = vec![BigRational::zero(); width + 1];
    for row in &rows {
        for j in 0..vars {
            obj[j] += &row[j];
        }
        obj[width] += &row[width];
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (vars..width).collect(),
    };
    let bounded = t.run(width);
    debug_assert!(bounded, "phase one is bounded");
    if t.obj[width].is_positive() {
        return None;
    }

    // Drive remaining artificial variables out of the basis.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= vars {
            match (0..vars).find(|&j| !t.rows[r][j].is_zero()) {
                Some(c) => t.pivot(r, c),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    for row in t.rows.iter_mut() {
        row.drain(vars..width);
    }
    t.obj = vec![BigRational::zero(); vars + 1];
    Some(t)
}

/// Some `x ≥ 0` with `A x = b`, if one exists.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational], vars: usize) -> Option<Vec<BigRational>> {
    phase_one(a, b, vars).map(|t| t.solution(vars))
}

/// Maximise `c · x` subject to `A x = b`, `x ≥ 0`.
pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let vars = c.len();
    let Some(mut t) = phase_one(a, b, vars) else {
        return LpOutcome::Infeasible;
    };
    let rhs = vars;
    let mut obj: Vec<BigRational> = c.to_vec();
    obj.push(BigRational::zero());
    for (r, &bv) in t.basis.iter().enumerate() {
        let cb = &c[bv];
        if cb.is_zero() {
            continue;
        }
        for j in 0..=rhs {
            obj[j] -= cb * &t.rows[r][j];
        }
    }
    t.obj = obj;
    if !t.run(vars) {
        return LpOutcome::Unbounded;
    }
    let x = t.solution(vars);
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpOutcome::Optimal { value, x }
}
