//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use nsmacd::bruhat;
use nsmacd::fillings::{chain_flip, support_by_enumeration, Filling, NuFamily};
use nsmacd::geometry;
use nsmacd::macdonald::{self, HhlStatistics, QTParams};
use nsmacd::verify::{compositions, families};
use nsmacd::{Composition, Error, PointSet, WeightVector};

type Q = Ratio<i128>;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn nsmacd(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nsmacd"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn rows(v: &Value) -> Vec<Vec<i64>> {
    serde_json::from_value(v.clone()).expect("integer rows")
}

fn support_reproduction() -> Outcome {
    let (code, out) = nsmacd(&["support", "--mu", "0,2,0"]);
    let got = rows(&serde_json::from_str(&out).expect("json"));
    let want = vec![vec![0, 1, 1], vec![0, 2, 0], vec![1, 0, 1], vec![1, 1, 0], vec![2, 0, 0]];
    outcome(code == 0 && got == want, format!("exit {code}, {} points", got.len()))
}

/// The displayed closed form of E_(0,2,0), evaluated in `Ratio<i128>`.
fn closed_form_e020(q: Q, t: Q) -> Vec<(Vec<i64>, Q)> {
    let one = Q::from_integer(1);
    let x1sq = (one - t) / (one - q * q * t * t);
    let x2x3 = q * (one - t) / (one - q * t);
    let x1x3 = q * (one - t) * (one - t) / ((one - q * t) * (one - q * q * t * t));
    let x1x2 = (one - t) / (one - q * t) + x1x3;
    vec![
        (vec![0, 2, 0], one),
        (vec![2, 0, 0], x1sq),
        (vec![0, 1, 1], x2x3),
        (vec![1, 0, 1], x1x3),
        (vec![1, 1, 0], x1x2),
    ]
}

fn coefficient_reproduction() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (q, t) in [((1, 2), (1, 2)), ((1, 3), (1, 5))] {
        let (qs, ts) = (format!("{}/{}", q.0, q.1), format!("{}/{}", t.0, t.1));
        let (code, out) = nsmacd(&["coeffs", "--mu", "0,2,0", "--q", &qs, "--t", &ts]);
        let terms: Vec<Value> = serde_json::from_str(&out).expect("json");
        let mut got: Vec<(Vec<i64>, String)> = terms
            .iter()
            .map(|t| (rows(&Value::Array(vec![t["exponent"].clone()])).remove(0), t["coefficient"].as_str().unwrap().to_string()))
            .collect();
        got.sort();
        let mut want: Vec<(Vec<i64>, String)> = closed_form_e020(Q::new(q.0, q.1), Q::new(t.0, t.1))
            .into_iter()
            .map(|(e, c)| (e, format!("{}/{}", c.numer(), c.denom())))
            .collect();
        want.sort();
        ok &= code == 0 && got == want;
        let shown: Vec<String> = want.iter().map(|(e, c)| format!("{e:?}:{c}")).collect();
        details.push(format!("(q,t)=({qs},{ts}) {}", shown.join(" ")));
    }
    outcome(ok, details.join("; "))
}

fn desk_sweep() -> Vec<Composition> {
    compositions(4, 6)
}

fn triple_support_agreement() -> Outcome {
    let comps = desk_sweep();
    let bad: Vec<String> = comps
        .iter()
        .filter(|mu| {
            let r = macdonald::support_by_recursion(mu);
            r != support_by_enumeration(mu) || r != bruhat::ideal(&mu.to_weight()).elements
        })
        .map(|mu| mu.to_string())
        .collect();
    outcome(bad.is_empty(), format!("{} compositions, {} disagreements {:?}", comps.len(), bad.len(), bad.iter().take(3).collect::<Vec<_>>()))
}

fn main_theorem() -> Outcome {
    let comps = desk_sweep();
    let mut fails = Vec::new();
    for mu in &comps {
        let s = macdonald::support_by_recursion(mu);
        let exchange = geometry::is_mconvex_exchange(&s);
        let geometric = geometry::is_mconvex_geometric(&s);
        let submodular = geometry::support_function(&s).map(|f| f.is_submodular()).unwrap_or(false);
        let cert = macdonald::certify_mconvex(mu).and_then(|c| c.replay());
        if !(exchange && geometric && submodular && cert.as_ref() == Ok(&s)) {
            fails.push(mu.to_string());
        }
    }
    outcome(fails.is_empty(), format!("{} supports: exchange, geometric, submodular, certificate; {} failures", comps.len(), fails.len()))
}

fn hull_points_in_ideal() -> Outcome {
    let comps = desk_sweep();
    let fails = comps.iter().filter(|mu| !bruhat::verify_hull_points_in_ideal(mu)).count();
    outcome(fails == 0, format!("{} ideals, {fails} with a stray lattice point", comps.len()))
}

fn knop_sahi() -> Outcome {
    let comps = Composition::all_up_to(3, 4);
    let params = [
        QTParams::from_ratios((1, 2), (1, 2)).unwrap(),
        QTParams::from_ratios((1, 3), (1, 5)).unwrap(),
    ];
    let mut fails = 0;
    for p in &params {
        for mu in &comps {
            if !macdonald::verify_knop_sahi(mu, p, &HhlStatistics) {
                fails += 1;
            }
        }
    }
    outcome(fails == 0, format!("{} cases at 2 (q,t) pairs, {fails} failures", comps.len() * params.len()))
}

fn eight_column_example() -> Filling {
    let shape = Composition::new(vec![0, 0, 2, 3, 1, 2, 2, 4]).unwrap();
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

fn labeling_lemmas() -> Outcome {
    let fams: Vec<NuFamily> = families(5, 3, 3);
    let running = NuFamily::new(vec![2, 1], 2, 3).unwrap();
    assert!(fams.contains(&running));
    let mut checks = 0;
    let mut fails = 0;
    for fam in &fams {
        for i in 1..=fam.prefix_length() {
            let mut results = vec![fam.verify_inductive_labelings(i), fam.verify_moving_column_bottom(i)];
            if i < fam.prefix_length() {
                results.push(fam.verify_partial_sym(i));
                results.push(fam.verify_reflection_inclusion(i));
                results.push(fam.verify_labeling_constraint(i));
            }
            for r in results {
                checks += 1;
                if r != Ok(true) {
                    fails += 1;
                }
            }
        }
    }
    let flipped = chain_flip(&eight_column_example(), 2).map(|f| f.multiplicity());
    let want = WeightVector::new(vec![2, 4, 2, 2, 1, 1, 1, 1]).unwrap();
    let flip_ok = flipped.as_ref() == Ok(&want);
    outcome(
        fails == 0 && flip_ok,
        format!(
            "{} families, {checks} identity checks, {fails} failures; chain flip mult = {}",
            fams.len(),
            flipped.map(|m| m.to_string()).unwrap_or_else(|e| e.to_string())
        ),
    )
}

fn lattice_segment(n: usize, i: usize, j: usize, k: i64) -> PointSet {
    PointSet::from_points((0..=k).map(|s| {
        let mut v = vec![0; n];
        v[i] += s;
        v[j] -= s;
        WeightVector::new(v).unwrap()
    }))
    .unwrap()
}

/// Lattice points of `k · conv{e_i : i ∈ support}`.
fn lattice_simplex(n: usize, support: &[usize], k: usize) -> PointSet {
    let m = support.len();
    PointSet::from_points(Composition::all_up_to(m, k).into_iter().filter(|c| c.size() == k).map(|c| {
        let mut v = vec![0i64; n];
        for (slot, &i) in support.iter().enumerate() {
            v[i] = c.parts()[slot] as i64;
        }
        WeightVector::new(v).unwrap()
    }))
    .unwrap()
}

/// Lattice points of a random Minkowski sum of root segments and simplices.
fn random_mconvex(rng: &mut ChaCha8Rng) -> PointSet {
    let n = rng.gen_range(2..=4);
    let base: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    let mut s = PointSet::singleton(WeightVector::new(base).unwrap());
    for _ in 0..rng.gen_range(1..=3) {
        let summand = if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            lattice_segment(n, i, j, rng.gen_range(1..=2))
        } else {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(rng);
            idx.truncate(rng.gen_range(2..=n));
            idx.sort_unstable();
            lattice_simplex(n, &idx, rng.gen_range(1..=2))
        };
        s = geometry::minkowski_sum(&s, &summand).unwrap();
    }
    geometry::lattice_points(&s).unwrap()
}

fn union_reflection_property() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let (mut instances, mut proper, mut fails, mut rejected) = (0, 0, 0, 0);
    while instances < 600 {
        let s = random_mconvex(&mut rng);
        let n = s.dim();
        let mut pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        pairs.shuffle(&mut rng);
        for (i, j) in pairs {
            match geometry::union_reflection(&s, i, j) {
                Ok(out) => {
                    instances += 1;
                    if out.len() > s.len() {
                        proper += 1;
                    }
                    if !(geometry::is_mconvex_exchange(&out) && geometry::is_mconvex_geometric(&out)) {
                        fails += 1;
                    }
                    break;
                }
                Err(Error::ReflectionHypothesis { .. }) => rejected += 1,
                Err(e) => panic!("generator produced a bad input: {e}"),
            }
        }
    }
    outcome(fails == 0, format!("{instances} instances ({proper} growing the set, {rejected} pairs rejected by the hypothesis), {fails} failures"))
}

fn random_constant_sum_set(rng: &mut ChaCha8Rng) -> PointSet {
    match rng.gen_range(0..3) {
        0 => loop {
            let s = random_mconvex(rng);
            if s.len() <= 40 {
                return s;
            }
        },
        1 => loop {
            let s = random_mconvex(rng);
            if s.len() >= 2 && s.len() <= 41 {
                let mut pts = s.to_vec();
                let k = rng.gen_range(0..pts.len());
                pts.remove(k);
                return PointSet::from_points(pts).unwrap();
            }
        },
        _ => {
            let n = rng.gen_range(2..=4);
            let k = rng.gen_range(1..=4);
            let layer: Vec<WeightVector> = Composition::all_up_to(n, k)
                .into_iter()
                .filter(|c| c.size() == k)
                .map(|c| c.to_weight())
                .collect();
            let m = rng.gen_range(1..=layer.len().min(40));
            PointSet::from_points(layer.choose_multiple(rng, m).cloned()).unwrap()
        }
    }
}

fn checker_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let (mut mconvex, mut other, mut disagree) = (0, 0, 0);
    for _ in 0..1200 {
        let s = random_constant_sum_set(&mut rng);
        assert!(s.len() <= 40 && s.common_sum().is_some());
        let a = geometry::is_mconvex_exchange(&s);
        if a != geometry::is_mconvex_geometric(&s) {
            disagree += 1;
        }
        if a {
            mconvex += 1;
        } else {
            other += 1;
        }
    }
    outcome(disagree == 0 && mconvex > 0 && other > 0, format!("1200 sets ({mconvex} M-convex, {other} not), {disagree} disagreements"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("support of E_(0,2,0) via the CLI", Duration::from_secs(1), support_reproduction),
        ("coefficients of E_(0,2,0) against the closed form", Duration::from_secs(1), coefficient_reproduction),
        ("recursion = fillings = Bruhat ideal, n<=4, |mu|<=6", Duration::from_secs(300), triple_support_agreement),
        ("supports are M-convex with verifying certificates", Duration::from_secs(600), main_theorem),
        ("non-negative hull points of Bruhat ideals lie in the ideal", Duration::from_secs(600), hull_points_in_ideal),
        ("Knop-Sahi recurrence, n=3, |mu|<=4", Duration::from_secs(120), knop_sahi),
        ("labeling identities on column-shift families and chain flip", Duration::from_secs(120), labeling_lemmas),
        ("union reflection preserves M-convexity on random sets", Duration::from_secs(120), union_reflection_property),
        ("exchange and polyhedral checkers agree on random sets", Duration::from_secs(120), checker_agreement),
    ];
    let mut all = true;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let ok = o.ok && elapsed <= *budget;
        all &= ok;
        println!(
            "criterion {}: {} - {name} [{:.2}s / {}s] {}",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
