//! Acceptance suite. Every comparison is exact: radii, LP values and
//! coverage counts are rationals or integers, so the tolerance is zero.
//! Prints one line per criterion and exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use ckc::approx::{self, DpItem, DpTable};
use ckc::clustering::{build_lp2, cluster, ClusterDecomposition, Lp1Problem, Lp1Solution};
use ckc::dist::{int, Dist, Rational};
use ckc::gap_lab;
use ckc::lp::{self, LpStatus};
use ckc::model::{flower, Instance, Neighborhoods, PointSet, BLUE, RED};
use ckc::multicolor::{self, deficit_bound, ClassRoles, MulticolorOptions};
use ckc::oracle;
use common::{is_fractional, random_instance, random_radius, recount};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn two_color_corpus() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..200).map(|_| random_instance(&mut rng, 12, 4, 2, 20)).collect()
}

fn approximation_ratio(corpus: &[Instance]) -> Verdict {
    let bad: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            let opt = oracle::exact_opt(inst).unwrap();
            let sol = approx::solve(inst).unwrap();
            let ok = sol.feasible
                && sol.centers.len() <= inst.k()
                && recount(inst, &sol.centers, &sol.radius).iter().zip(inst.req()).all(|(h, r)| h >= r)
                && sol.radius <= opt.radius.scaled(3);
            (!ok).then(|| format!("#{i}: radius {} vs optimum {}", sol.radius, opt.radius))
        })
        .collect();
    verdict(bad.is_empty(), format!("{}/{} within 3x optimum {:?}", corpus.len() - bad.len(), corpus.len(), bad))
}

fn pseudo_approximation(corpus: &[Instance]) -> Verdict {
    let bad: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            let opt = oracle::exact_opt(inst).unwrap();
            let nb = Neighborhoods::new(inst, &opt.radius);
            let ok = match approx::pseudo_approx(inst, &nb).unwrap() {
                Some(centers) => {
                    let got = recount(inst, &centers, &opt.radius.scaled(2));
                    centers.len() <= inst.k() + 1 && got.iter().zip(inst.req()).all(|(h, r)| h >= r)
                }
                None => false,
            };
            (!ok).then(|| format!("#{i}"))
        })
        .collect();
    verdict(bad.is_empty(), format!("{}/{} with <= k+1 centers at 2x optimum {:?}", corpus.len() - bad.len(), corpus.len(), bad))
}

/// A random vertex of LP1: maximize a random objective.
fn random_lp1_point(rng: &mut ChaCha8Rng, inst: &Instance, nb: &Neighborhoods) -> Option<(Lp1Problem, Lp1Solution)> {
    let problem = Lp1Problem::whole(inst);
    let mut lp = problem.build(inst, nb);
    let weights = (0..lp.num_vars()).map(|j| (j, int(rng.gen_range(-5..=5)))).collect();
    lp.set_objective(weights, true);
    let sol = lp::solve_extreme_max(&lp).unwrap();
    (sol.status == LpStatus::Optimal).then(|| (problem, Lp1Solution::from_values(inst.n(), sol.values)))
}

fn clustering_feasibility() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    let mut violations = Vec::new();
    while checked < 100 {
        let inst = random_instance(&mut rng, 12, 4, 2, 20);
        let rho = random_radius(&mut rng, &inst);
        let nb = Neighborhoods::new(&inst, &rho);
        let Some((problem, sol)) = random_lp1_point(&mut rng, &inst, &nb) else { continue };
        checked += 1;
        let dec = cluster(&inst, &nb, &problem, &sol).unwrap();
        let mut seen = PointSet::with_capacity(inst.n());
        let (mut red, mut blue, mut total) = (Rational::zero(), Rational::zero(), Rational::zero());
        for (t, &j) in dec.centers.iter().enumerate() {
            let cl = &dec.clusters[t];
            if !sol.z[j].is_positive() {
                violations.push(format!("center {j} has z = 0"));
            }
            if !seen.is_disjoint(cl) {
                violations.push(format!("cluster of {j} overlaps"));
            }
            seen.union_with(cl);
            let fl = flower(&inst, j, &rho).unwrap();
            if !cl.is_subset(&fl) {
                violations.push(format!("cluster of {j} leaves its flower"));
            }
            let y = &dec.y[t];
            if y.is_negative() || *y > Rational::one() {
                violations.push(format!("y of {j} out of range"));
            }
            let r = cl.ones().filter(|&p| inst.color(p) == RED).count();
            let b = cl.ones().filter(|&p| inst.color(p) == BLUE).count();
            red += Rational::from_integer(r.into()) * y;
            blue += Rational::from_integer(b.into()) * y;
            total += y;
        }
        if blue < Rational::from_integer(inst.req()[BLUE].into()) {
            violations.push("blue row".into());
        }
        if red < Rational::from_integer(inst.req()[RED].into()) {
            violations.push("red row".into());
        }
        if total > Rational::from_integer(inst.k().into()) {
            violations.push("budget row".into());
        }
    }
    verdict(violations.is_empty(), format!("{checked} LP1 vertices, violations {violations:?}"))
}

/// Optimum of `max sum r_t y_t` s.t. `sum b_t y_t >= need`, `sum y_t <= k`,
/// `0 <= y <= 1`, by enumerating every basic solution: each variable at 0,
/// 1 or free, with at most two free variables pinned by tight rows.
fn lp2_by_vertices(r: &[i64], b: &[i64], need: i64, k: i64) -> Option<Rational> {
    let m = r.len();
    let q = |v: i64| int(v);
    let mut best: Option<Rational> = None;
    let mut consider = |y: &[Rational]| {
        let zero = Rational::zero();
        if y.iter().any(|v| *v < zero || *v > Rational::one()) {
            return;
        }
        let cover: Rational = y.iter().zip(b).map(|(v, &c)| v * q(c)).sum();
        let used: Rational = y.iter().sum();
        if cover < q(need) || used > q(k) {
            return;
        }
        let value: Rational = y.iter().zip(r).map(|(v, &c)| v * q(c)).sum();
        if best.as_ref().is_none_or(|v| value > *v) {
            best = Some(value);
        }
    };
    let mut states = vec![0u8; m];
    loop {
        let free: Vec<usize> = (0..m).filter(|&t| states[t] == 2).collect();
        if free.len() <= 2 {
            let base: Vec<Rational> = states.iter().map(|&s| if s == 1 { Rational::one() } else { Rational::zero() }).collect();
            let fixed_cover: Rational = base.iter().zip(b).map(|(v, &c)| v * q(c)).sum();
            let fixed_used: Rational = base.iter().sum();
            match free.as_slice() {
                [] => consider(&base),
                [f] => {
                    if b[*f] != 0 {
                        let mut y = base.clone();
                        y[*f] = (q(need) - &fixed_cover) / q(b[*f]);
                        consider(&y);
                    }
                    let mut y = base.clone();
                    y[*f] = q(k) - &fixed_used;
                    consider(&y);
                }
                [f, g] => {
                    let det = q(b[*f] - b[*g]);
                    if !det.is_zero() {
                        let (c1, c2) = (q(need) - &fixed_cover, q(k) - &fixed_used);
                        let yf = (&c1 - q(b[*g]) * &c2) / &det;
                        let yg = (q(b[*f]) * &c2 - &c1) / &det;
                        let mut y = base.clone();
                        y[*f] = yf;
                        y[*g] = yg;
                        consider(&y);
                    }
                }
                _ => unreachable!(),
            }
        }
        let mut t = 0;
        loop {
            if t == m {
                return best;
            }
            states[t] += 1;
            if states[t] <= 2 {
                break;
            }
            states[t] = 0;
            t += 1;
        }
    }
}

fn extreme_points() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = Vec::new();
    let mut feasible = 0;
    for i in 0..100 {
        let m = rng.gen_range(1..=7);
        let r: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=9)).collect();
        let b: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=9)).collect();
        let need = rng.gen_range(0..=b.iter().sum::<i64>());
        let k = rng.gen_range(1..=m as i64);
        let dec = ClusterDecomposition {
            centers: (0..m).collect(),
            clusters: vec![PointSet::with_capacity(m); m],
            counts: r.iter().zip(&b).map(|(&x, &y)| vec![x as usize, y as usize]).collect(),
            y: vec![Rational::zero(); m],
            z_tilde: vec![Rational::zero(); m],
        };
        let lp2 = build_lp2(&dec, RED, &[0, need as usize], k as usize);
        let sol = lp::solve_extreme_max(&lp2).unwrap();
        let expected = lp2_by_vertices(&r, &b, need, k);
        let fractional = sol.values.iter().filter(|v| is_fractional(v)).count();
        let ok = match (&expected, sol.status) {
            (None, LpStatus::Infeasible) => true,
            (Some(v), LpStatus::Optimal) => {
                feasible += 1;
                fractional <= 2 && sol.objective.as_ref() == Some(v) && lp2.is_satisfied_by(&sol.values)
            }
            _ => false,
        };
        if !ok {
            bad.push(format!("#{i}: {:?} vs {expected:?}, {fractional} fractional", sol.objective));
        }
    }
    verdict(bad.is_empty(), format!("100 programs ({feasible} feasible), mismatches {bad:?}"))
}

fn dp_correctness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = 0;
    let mut cells = 0;
    for _ in 0..100 {
        let m = rng.gen_range(0..=6);
        let groups: Vec<Vec<Vec<usize>>> = (0..m)
            .map(|_| (0..rng.gen_range(1..=4)).map(|_| vec![rng.gen_range(0..=3), rng.gen_range(0..=3)]).collect())
            .collect();
        let caps: Vec<usize> = (0..2).map(|c| groups.iter().map(|g| g.iter().map(|v| v[c]).max().unwrap()).sum()).collect();
        let items = groups
            .iter()
            .enumerate()
            .map(|(g, items)| items.iter().map(|v| DpItem { point: g, cover: v.clone() }).collect())
            .collect();
        let table = DpTable::new(items, caps.clone(), m);
        for count in 0..=m {
            for blue in 0..=caps[1] {
                for red in 0..=caps[0] {
                    cells += 1;
                    let cover = [red, blue];
                    if table.get(m, &cover, count) != oracle::group_knapsack_enum(&groups, count, &cover).unwrap() {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    verdict(mismatches == 0, format!("{cells} cells over 100 group sets, {mismatches} mismatches"))
}

fn subset_sum_reduction() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    let mut yes = 0;
    for i in 0..20 {
        let n = rng.gen_range(2..=8);
        let values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=20)).collect();
        let k = rng.gen_range(1..n);
        let inst = gap_lab::subset_sum_instance(&values, k).unwrap();
        let (doubled, half) = gap_lab::subset_sum_target(&values);
        let expected = oracle::subset_sum(&doubled, k, half);
        let (found, _) = oracle::feasible_at(&inst, &Dist::from_integer(1)).unwrap();
        yes += expected as usize;
        if found.is_some() != expected {
            bad.push(format!("#{i}: {values:?} k {k}"));
        }
    }
    verdict(bad.is_empty(), format!("20 value sets ({yes} yes-instances), mismatches {bad:?}"))
}

fn sos_gap() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [1, 3] {
        let inst = gap_lab::sos_gap_instance(n, &int(100)).unwrap();
        let one = Dist::from_integer(1);
        let nb = Neighborhoods::new(&inst, &one);
        let problem = Lp1Problem::whole(&inst);
        // one half on the first point of every group
        let half = Rational::new(1.into(), 2.into());
        let x: Vec<Rational> = (0..inst.n()).map(|i| if i % 4 == 0 { half.clone() } else { Rational::zero() }).collect();
        let z = vec![half.clone(); inst.n()];
        let uniform = problem.is_feasible_point(&inst, &nb, &Lp1Solution { x, z });
        let lp_feasible = problem.solve(&inst, &nb).unwrap().is_some();
        let opt = oracle::exact_opt(&inst).unwrap();
        let sol = approx::solve(&inst).unwrap();
        let here = uniform && lp_feasible && opt.radius == Dist::from_integer(100) && sol.feasible && sol.radius <= Dist::from_integer(300);
        ok &= here;
        notes.push(format!("n={n}: LP1 at 1 {lp_feasible}, half point {uniform}, optimum {}, solve {}", opt.radius, sol.radius));
    }
    verdict(ok, notes.join("; "))
}

fn flow_gap() -> Verdict {
    let far = int(100);
    let (inst, _, cert) = gap_lab::flow_gap_instance(&far).unwrap();
    let check = cert.check(&inst).unwrap();
    let one = Dist::from_integer(1);
    let (found, examined) = oracle::feasible_at_unreduced(&inst, &one).unwrap();
    let opt = oracle::exact_opt(&inst).unwrap();
    let ok = check.ok && found.is_none() && opt.radius == Dist::from_integer(100);
    verdict(
        ok,
        format!(
            "certificate {} ({} rows violated), radius 1 infeasible over {examined} search nodes: {}, optimum {}",
            if check.ok { "accepted" } else { "rejected" },
            check.violated.len(),
            found.is_none(),
            opt.radius
        ),
    )
}

fn two_class_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let corpus: Vec<Instance> = (0..50).map(|_| random_instance(&mut rng, 12, 5, 2, 20)).collect();
    let bad: Vec<usize> = corpus
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| (approx::solve(inst).unwrap() != multicolor::solve_omega(inst).unwrap()).then_some(i))
        .collect();
    verdict(bad.is_empty(), format!("{}/50 identical, differing {bad:?}", 50 - bad.len()))
}

fn three_class_pseudo() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let corpus: Vec<Instance> = (0..20).map(|_| random_instance(&mut rng, 10, 4, 3, 20)).collect();
    let roles = ClassRoles::new(3, None).unwrap();
    let rows: Vec<(bool, bool, Option<bool>)> = corpus
        .par_iter()
        .map(|inst| {
            let opt = oracle::exact_opt(inst).unwrap();
            let nb = Neighborhoods::new(inst, &opt.radius);
            let wide = opt.radius.scaled(2);
            let required = match multicolor::pseudo_keep_all_omega(inst, &nb, &roles).unwrap() {
                Some(run) => {
                    let got = recount(inst, &run.centers, &wide);
                    run.centers.len() <= inst.k() + 2
                        && got[roles.full] >= inst.req()[roles.full]
                        && roles.deficit.iter().all(|&c| got[c] + deficit_bound(inst, &nb, &run, c) >= inst.req()[c])
                }
                None => false,
            };
            // the k-center rounding, reported only
            let within_k = multicolor::pseudo_approx_omega(inst, &nb, &roles).unwrap().is_some_and(|run| {
                let got = recount(inst, &run.centers, &wide);
                run.centers.len() <= inst.k()
                    && got[roles.full] >= inst.req()[roles.full]
                    && roles.deficit.iter().all(|&c| got[c] + deficit_bound(inst, &nb, &run, c) >= inst.req()[c])
            });
            let out = multicolor::solve_omega_with(inst, &MulticolorOptions::default(), &approx::Trace::default()).unwrap();
            let full = (!out.budget_hit).then(|| {
                let sol = out.outcome.unwrap().solution;
                sol.feasible && sol.radius <= opt.radius.scaled(3)
            });
            (required, within_k, full)
        })
        .collect();
    let passed = rows.iter().filter(|r| r.0).count();
    let within_k = rows.iter().filter(|r| r.1).count();
    let complete = rows.iter().filter(|r| r.2.is_some()).count();
    let within_3 = rows.iter().filter(|r| r.2 == Some(true)).count();
    verdict(
        passed == rows.len(),
        format!(
            "{passed}/20 with <= k+2 centers meeting the bounds; k-center rounding meets them on {within_k}/20; \
             full solver within 3x on {within_3}/{complete} runs that finished within the guess budget"
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = two_color_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("approximation ratio", Box::new(|| approximation_ratio(&corpus))),
        ("pseudo-approximation", Box::new(|| pseudo_approximation(&corpus))),
        ("clustering feasibility", Box::new(clustering_feasibility)),
        ("extreme-point fractionality", Box::new(extreme_points)),
        ("dense knapsack table", Box::new(dp_correctness)),
        ("subset-sum reduction", Box::new(subset_sum_reduction)),
        ("four-point group gap", Box::new(sos_gap)),
        ("flow-strengthened gap", Box::new(flow_gap)),
        ("two-class equivalence", Box::new(two_class_equivalence)),
        ("three-class pseudo-approximation", Box::new(three_class_pseudo)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = run();
        failed += !v.passed as usize;
        println!(
            "criterion {:>2} {:<34} {} [{:.1}s] {}",
            i + 1,
            name,
            if v.passed { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            v.detail
        );
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
