//! Exhaustive sweeps checking every structural identity over all small
//! compositions, reported as pass/fail counts per named check.

use rayon::prelude::*;
use serde::Serialize;

use crate::bruhat;
use crate::error::Result;
use crate::fillings::{support_by_enumeration, NuFamily};
use crate::geometry;
use crate::lattice::Composition;
use crate::macdonald::{self, HhlStatistics, QTParams};

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Compositions of length `1..=max_n`.
    pub max_n: usize,
    /// Compositions of size `0..=max_weight`.
    pub max_weight: usize,
    /// Size bound for the coefficient-level checks, which enumerate
    /// fillings of `π(μ)` and evaluate exact rationals.
    pub coefficient_max_weight: usize,
    /// Length bound for the coefficient-level checks.
    pub coefficient_max_n: usize,
    pub params: Vec<QTParams>,
    /// Families `0^{i−1} a 0^{m−i} base` with `m + len(base) ≤ family_max_len`.
    pub family_max_len: usize,
    pub family_max_height: usize,
    pub family_max_base_size: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig::new(4, 6)
    }
}

impl SweepConfig {
    pub fn new(max_n: usize, max_weight: usize) -> Self {
        SweepConfig {
            max_n,
            max_weight,
            coefficient_max_weight: max_weight.min(4),
            coefficient_max_n: max_n.min(3),
            params: vec![
                QTParams::default(),
                QTParams::from_ratios((1, 3), (1, 5)).expect("generic"),
            ],
            family_max_len: max_n + 1,
            family_max_height: 3,
            family_max_base_size: 3,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// The first few failing inputs.
    pub witnesses: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub max_n: usize,
    pub max_weight: usize,
    pub checks: Vec<CheckReport>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckReport::ok)
    }
}

const MAX_WITNESSES: usize = 5;

/// Run `check` on every case in parallel; results are collected in input
/// order so reports do not depend on scheduling.
pub fn run_check<T, F>(name: &'static str, cases: &[T], check: F) -> CheckReport
where
    T: Sync + std::fmt::Display,
    F: Fn(&T) -> Result<bool> + Sync,
{
    let outcomes: Vec<std::result::Result<(), String>> = cases
        .par_iter()
        .map(|c| match check(c) {
            Ok(true) => Ok(()),
            Ok(false) => Err(c.to_string()),
            Err(e) => Err(format!("{c}: {e}")),
        })
        .collect();
    let failed: Vec<String> = outcomes.into_iter().filter_map(|o| o.err()).collect();
    CheckReport {
        name,
        passed: cases.len() - failed.len(),
        failed: failed.len(),
        witnesses: failed.into_iter().take(MAX_WITNESSES).collect(),
    }
}

/// All compositions of length `1..=max_n` and size `≤ max_weight`.
pub fn compositions(max_n: usize, max_weight: usize) -> Vec<Composition> {
    (1..=max_n).flat_map(|n| Composition::all_up_to(n, max_weight)).collect()
}

/// A family member index together with its family, for reporting.
pub struct FamilyStep {
    pub family: NuFamily,
    pub i: usize,
}

impl std::fmt::Display for FamilyStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "base={:?} a={} m={} i={}",
            self.family.base(),
            self.family.column_height(),
            self.family.prefix_length(),
            self.i
        )
    }
}

pub fn families(max_len: usize, max_height: usize, max_base_size: usize) -> Vec<NuFamily> {
    let mut out = Vec::new();
    for m in 2..=max_len {
        for b in 0..=(max_len - m) {
            let bases: Vec<Vec<usize>> = if b == 0 {
                vec![Vec::new()]
            } else {
                Composition::all_up_to(b, max_base_size)
                    .into_iter()
                    .map(|c| c.parts().to_vec())
                    .collect()
            };
            for base in bases {
                for a in 1..=max_height {
                    out.push(NuFamily::new(base.clone(), a, m).expect("a >= 1, m >= 2"));
                }
            }
        }
    }
    out
}

/// Every `(family, i)` with `1 ≤ i < m` (or `≤ m` when `inclusive`).
pub fn family_steps(families: &[NuFamily], inclusive: bool) -> Vec<FamilyStep> {
    families
        .iter()
        .flat_map(|fam| {
            let top = if inclusive { fam.prefix_length() } else { fam.prefix_length() - 1 };
            (1..=top).map(move |i| FamilyStep {
                family: fam.clone(),
                i,
            })
        })
        .collect()
}

/// Run every check of the sweep.
pub fn run_sweep(cfg: &SweepConfig) -> SweepReport {
    let comps = compositions(cfg.max_n, cfg.max_weight);
    let small: Vec<Composition> = comps
        .iter()
        .filter(|c| c.len() <= cfg.coefficient_max_n && c.size() <= cfg.coefficient_max_weight)
        .cloned()
        .collect();
    let fams = families(cfg.family_max_len, cfg.family_max_height, cfg.family_max_base_size);
    let steps = family_steps(&fams, false);
    let members = family_steps(&fams, true);

    let mut checks = vec![
        run_check("support_recursion_equals_enumeration", &comps, |mu| {
            Ok(macdonald::support_by_recursion(mu) == support_by_enumeration(mu))
        }),
        run_check("support_equals_bruhat_ideal", &comps, |mu| {
            Ok(macdonald::support_by_recursion(mu) == bruhat::ideal(&mu.to_weight()).elements)
        }),
        run_check("support_exchange_axiom", &comps, |mu| {
            Ok(geometry::is_mconvex_exchange(&macdonald::support_by_recursion(mu)))
        }),
        run_check("support_saturated_generalized_permutahedron", &comps, |mu| {
            Ok(geometry::is_mconvex_geometric(&macdonald::support_by_recursion(mu)))
        }),
        run_check("support_function_submodular", &comps, |mu| {
            Ok(geometry::support_function(&macdonald::support_by_recursion(mu))?.is_submodular())
        }),
        run_check("mconvexity_certificate", &comps, |mu| {
            let cert = macdonald::certify_mconvex(mu)?;
            Ok(cert.replay()? == macdonald::support_by_recursion(mu))
        }),
        run_check("hull_points_in_bruhat_ideal", &comps, |mu| {
            Ok(bruhat::verify_hull_points_in_ideal(mu))
        }),
        run_check("newton_equals_moment_polytope", &comps, |mu| {
            let w = mu.to_weight();
            Ok(macdonald::newton_polytope(&w).vertices() == macdonald::moment_polytope(&w).vertices())
        }),
        run_check("moment_polytope_generalized_permutahedron", &comps, |mu| {
            Ok(geometry::is_generalized_permutahedron(&macdonald::moment_polytope(&mu.to_weight())))
        }),
        run_check("support_rotation_identity", &comps, |mu| {
            let lifted = mu.to_weight().pi().to_composition()?;
            Ok(macdonald::support_by_recursion(&lifted)
                == macdonald::rotate_support(&macdonald::support_by_recursion(mu)))
        }),
        run_check("bruhat_ideal_rotation_identity", &comps, |mu| {
            let w = mu.to_weight();
            Ok(bruhat::ideal(&w.pi()).elements == macdonald::rotate_support(&bruhat::ideal(&w).elements))
        }),
    ];

    for (k, params) in cfg.params.iter().enumerate() {
        let (ks, cs): (&'static str, &'static str) = match k {
            0 => ("knop_sahi_recurrence_params_1", "coefficient_support_params_1"),
            1 => ("knop_sahi_recurrence_params_2", "coefficient_support_params_2"),
            _ => ("knop_sahi_recurrence_params_n", "coefficient_support_params_n"),
        };
        checks.push(run_check(ks, &small, |mu| {
            Ok(macdonald::verify_knop_sahi(mu, params, &HhlStatistics))
        }));
        checks.push(run_check(cs, &small, |mu| {
            let p = macdonald::coefficients(mu, params, &HhlStatistics);
            Ok(p.support() == macdonald::support_by_recursion(mu)
                && p.terms().all(|(_, c)| c > &num_traits::Zero::zero()))
        }));
    }

    checks.extend([
        run_check("family_partial_symmetry", &steps, |s| s.family.verify_partial_sym(s.i)),
        run_check("family_inductive_labelings", &members, |s| {
            s.family.verify_inductive_labelings(s.i)
        }),
        run_check("family_reflection_inclusion", &steps, |s| {
            s.family.verify_reflection_inclusion(s.i)
        }),
        run_check("family_attacking_chain_flip", &steps, |s| {
            s.family.verify_labeling_constraint(s.i)
        }),
        run_check("family_moving_column_bottom", &members, |s| {
            s.family.verify_moving_column_bottom(s.i)
        }),
    ]);

    SweepReport {
        max_n: cfg.max_n,
        max_weight: cfg.max_weight,
        checks,
    }
}
