//! The two-color 3-approximation.
//!
//! For each candidate radius `rho` in ascending order the solver tries two
//! branches. The first assumes some ball of radius `3 rho` swallows two
//! optimal balls: it opens that ball and clusters the rest with two fewer
//! centers. The second assumes no such ball exists: it guesses three
//! optimal centers, strips their flowers, separates dense regions (solved
//! exactly by a group knapsack) from sparse ones (solved by LP clustering),
//! and combines the pieces. Every candidate is checked with
//! [`verify`](crate::model::verify) before it is returned.

pub mod dense;
pub mod dp;
pub mod phase_one;
pub mod sparse;

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::clustering::{cluster_and_round, Lp1Problem, Rounding};
use crate::dist::Dist;
use crate::error::Result;
use crate::model::{ball, radius_candidates, verify, Instance, Neighborhoods, Solution, RED};
use crate::oracle;

pub use dense::{dense_decompose, dense_decompose_by, DenseDecomposition, DenseStep};
pub use dp::{DpItem, DpTable};
pub use phase_one::{gain, phase_one, PhaseOneResult};
pub use sparse::{algorithm_sparse, closed_points, closed_points_by};

/// Which branch produced a solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Branch {
    /// All requirements are zero.
    Trivial,
    /// A ball of three times the guessed radius plus clustering.
    MergedBall { center: usize },
    /// Three guessed centers with dense and sparse parts.
    Separated { guesses: Vec<usize> },
    /// LP clustering alone, for budgets below three.
    Direct,
    /// Exhaustive search, for budgets below three.
    Exhaustive,
    /// One ball of the largest distance; only reached on non-metric input.
    Fallback,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub solution: Solution,
    /// The guessed radius at which the solution was found.
    pub guess_radius: Dist,
    pub branch: Branch,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Try only this radius.
    pub radius: Option<Dist>,
    /// Skip radii at which LP1 over the whole instance is infeasible.
    pub lp_gate: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { radius: None, lp_gate: true }
    }
}

/// Work counters. Under parallel search, counts include speculative work
/// and may vary between runs; results do not.
#[derive(Debug, Default)]
pub struct Trace {
    pub(crate) radii: AtomicU64,
    pub(crate) gated: AtomicU64,
    pub(crate) merged_tries: AtomicU64,
    pub(crate) triples: AtomicU64,
    pub(crate) dense_steps: AtomicU64,
    pub(crate) sparse_calls: AtomicU64,
    pub(crate) candidates: AtomicU64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TraceCounts {
    pub radii: u64,
    pub gated: u64,
    pub merged_tries: u64,
    pub triples: u64,
    pub dense_steps: u64,
    pub sparse_calls: u64,
    pub candidates: u64,
}

impl Trace {
    pub(crate) fn bump(counter: &AtomicU64, by: u64) {
        counter.fetch_add(by, Ordering::Relaxed);
    }

    pub fn counts(&self) -> TraceCounts {
        let get = |c: &AtomicU64| c.load(Ordering::Relaxed);
        TraceCounts {
            radii: get(&self.radii),
            gated: get(&self.gated),
            merged_tries: get(&self.merged_tries),
            triples: get(&self.triples),
            dense_steps: get(&self.dense_steps),
            sparse_calls: get(&self.sparse_calls),
            candidates: get(&self.candidates),
        }
    }
}

pub(crate) fn checked(inst: &Instance, centers: &[usize], radius: &Dist, trace: &Trace) -> Result<Option<Solution>> {
    Trace::bump(&trace.candidates, 1);
    let sol = verify(inst, centers, radius)?;
    Ok(sol.feasible.then_some(sol))
}

/// Searches `0..count` in parallel and returns the lowest-index hit.
pub(crate) fn first_hit<T: Send>(
    count: usize,
    f: impl Fn(usize) -> Result<Option<T>> + Sync,
) -> Result<Option<T>> {
    (0..count)
        .into_par_iter()
        .find_map_first(|t| f(t).transpose())
        .transpose()
}

/// Opens one ball of radius `3 rho` around some point and clusters the
/// points outside it with `k - 2` centers, keeping every positive center.
pub fn solve_not_well_separated(inst: &Instance, nb: &Neighborhoods, trace: &Trace) -> Result<Option<(Solution, usize)>> {
    let k = inst.k();
    if k < 2 {
        return Ok(None);
    }
    let wide = nb.radius().scaled(3);
    first_hit(inst.n(), |p| {
        Trace::bump(&trace.merged_tries, 1);
        let swallowed = ball(inst, p, &wide)?;
        let inside = inst.class_counts(&swallowed);
        let residual: Vec<usize> = inst.req().iter().zip(&inside).map(|(r, h)| r.saturating_sub(*h)).collect();
        let mut rest = inst.all_points();
        rest.difference_with(&swallowed);
        let others = if residual.iter().all(|&r| r == 0) {
            Some(Vec::new())
        } else {
            let problem = Lp1Problem::new(rest, k - 2, residual);
            cluster_and_round(inst, nb, &problem, RED, Rounding::KeepAll)?
        };
        let Some(mut centers) = others else { return Ok(None) };
        centers.push(p);
        Ok(checked(inst, &centers, &wide, trace)?.map(|s| (s, p)))
    })
}

fn triple(n: usize, t: usize) -> [usize; 3] {
    [t / (n * n), t / n % n, t % n]
}

/// One guessed triple: flowers, dense removal, knapsack over dense groups
/// and clustering of the sparse rest, for every dense budget and every
/// undominated dense coverage.
pub fn try_guesses(inst: &Instance, nb: &Neighborhoods, guesses: [usize; 3], trace: &Trace) -> Result<Option<Solution>> {
    Trace::bump(&trace.triples, 1);
    let k = inst.k();
    let p1 = phase_one(inst, nb, guesses)?;
    let opened = p1.opened();
    if opened.len() > k {
        return Ok(None);
    }
    let rest_budget = k - opened.len();
    let dec = dense_decompose(inst, nb, p1.remaining(), p1.tau);
    Trace::bump(&trace.dense_steps, dec.steps.len() as u64);
    let table = DpTable::from_decomposition(inst, nb, &dec, rest_budget);
    let closed = closed_points(inst, nb, &dec.sparse, p1.tau);
    let outer = nb.radius().scaled(2);
    for k_d in 0..=table.max_count() {
        for cover in table.frontier(k_d) {
            let dense_centers = table.reconstruct(&cover, k_d).expect("frontier cells are reachable");
            let req: Vec<usize> = inst
                .req()
                .iter()
                .enumerate()
                .map(|(c, r)| r.saturating_sub(p1.guessed_counts[c] + cover[c]))
                .collect();
            Trace::bump(&trace.sparse_calls, 1);
            let Some(sparse_centers) = sparse::sparse_centers(inst, nb, &dec.sparse, &closed, rest_budget - k_d, req)? else {
                continue;
            };
            let mut centers = opened.clone();
            centers.extend(dense_centers);
            centers.extend(sparse_centers);
            if let Some(sol) = checked(inst, &centers, &outer, trace)? {
                return Ok(Some(sol));
            }
        }
    }
    Ok(None)
}

/// Tries every ordered triple of guesses, lexicographically.
pub fn solve_well_separated(inst: &Instance, nb: &Neighborhoods, trace: &Trace) -> Result<Option<(Solution, [usize; 3])>> {
    if inst.k() < 3 {
        return Ok(None);
    }
    let n = inst.n();
    first_hit(n * n * n, |t| {
        let g = triple(n, t);
        Ok(try_guesses(inst, nb, g, trace)?.map(|s| (s, g)))
    })
}

/// LP1 over the whole instance, clustering, and every positive center:
/// at most `k + 1` centers. `None` when LP1 is infeasible at this radius.
pub fn pseudo_approx(inst: &Instance, nb: &Neighborhoods) -> Result<Option<Vec<usize>>> {
    cluster_and_round(inst, nb, &Lp1Problem::whole(inst), RED, Rounding::KeepAll)
}

fn small_budget(inst: &Instance, nb: &Neighborhoods, trace: &Trace) -> Result<Option<Outcome>> {
    let rho = nb.radius().clone();
    if let Some(centers) = pseudo_approx(inst, nb)? {
        if centers.len() <= inst.k() {
            if let Some(solution) = checked(inst, &centers, &rho.scaled(2), trace)? {
                return Ok(Some(Outcome { solution, guess_radius: rho, branch: Branch::Direct }));
            }
        }
    }
    let (found, _) = oracle::feasible_at(inst, &rho)?;
    match found {
        Some(centers) => {
            let solution = checked(inst, &centers, &rho, trace)?.expect("exhaustive search verifies");
            Ok(Some(Outcome { solution, guess_radius: rho, branch: Branch::Exhaustive }))
        }
        None => Ok(None),
    }
}

/// Both branches at one radius.
pub fn solve_at(inst: &Instance, nb: &Neighborhoods, trace: &Trace) -> Result<Option<Outcome>> {
    Trace::bump(&trace.radii, 1);
    let rho = nb.radius().clone();
    if let Some((solution, center)) = solve_not_well_separated(inst, nb, trace)? {
        return Ok(Some(Outcome { solution, guess_radius: rho, branch: Branch::MergedBall { center } }));
    }
    if inst.k() < 3 {
        return small_budget(inst, nb, trace);
    }
    if let Some((solution, g)) = solve_well_separated(inst, nb, trace)? {
        return Ok(Some(Outcome { solution, guess_radius: rho, branch: Branch::Separated { guesses: g.to_vec() } }));
    }
    Ok(None)
}

pub(crate) fn trivial(inst: &Instance) -> Option<Outcome> {
    inst.req().iter().all(|&r| r == 0).then(|| Outcome {
        solution: verify(inst, &[], &Dist::zero()).expect("no centers to check"),
        guess_radius: Dist::zero(),
        branch: Branch::Trivial,
    })
}

pub(crate) fn lp_feasible(inst: &Instance, nb: &Neighborhoods) -> Result<bool> {
    Ok(Lp1Problem::whole(inst).solve(inst, nb)?.is_some())
}

/// Generic radius loop shared by the two-color and multicolor solvers.
pub(crate) fn radius_loop(
    inst: &Instance,
    opts: &SolveOptions,
    trace: &Trace,
    at: impl Fn(&Neighborhoods) -> Result<Option<Outcome>>,
) -> Result<Option<Outcome>> {
    if let Some(t) = trivial(inst) {
        return Ok(Some(t));
    }
    if let Some(rho) = &opts.radius {
        return at(&Neighborhoods::new(inst, rho));
    }
    for rho in radius_candidates(inst).iter() {
        let nb = Neighborhoods::new(inst, rho);
        if opts.lp_gate && !lp_feasible(inst, &nb)? {
            Trace::bump(&trace.gated, 1);
            continue;
        }
        if let Some(out) = at(&nb)? {
            return Ok(Some(out));
        }
    }
    // unreachable on metric input: at the optimal radius one branch succeeds
    let far = inst.metric().max_level().clone();
    let solution = verify(inst, &[0], &far)?;
    Ok(solution.feasible.then_some(Outcome { solution, guess_radius: far, branch: Branch::Fallback }))
}

/// Full solver with options. `None` only when a pinned radius yields nothing.
pub fn solve_with(inst: &Instance, opts: &SolveOptions, trace: &Trace) -> Result<Option<Outcome>> {
    radius_loop(inst, opts, trace, |nb| solve_at(inst, nb, trace))
}

/// A solution of radius at most three times the optimum.
pub fn solve(inst: &Instance) -> Result<Solution> {
    let out = solve_with(inst, &SolveOptions::default(), &Trace::default())?;
    Ok(out.expect("the radius loop always finds a solution").solution)
}

/// Smallest radius whose LP clustering with every positive center meets
/// the requirements at twice the radius. Uses up to `k + 1` centers, so
/// the returned solution may exceed the budget.
pub fn solve_pseudo(inst: &Instance, opts: &SolveOptions) -> Result<Option<Outcome>> {
    if let Some(t) = trivial(inst) {
        return Ok(Some(t));
    }
    let attempt = |nb: &Neighborhoods| -> Result<Option<Outcome>> {
        let Some(centers) = pseudo_approx(inst, nb)? else { return Ok(None) };
        let solution = verify(inst, &centers, &nb.radius().scaled(2))?;
        let met = solution.covered.iter().zip(inst.req()).all(|(h, r)| h >= r);
        Ok(met.then(|| Outcome { solution, guess_radius: nb.radius().clone(), branch: Branch::Direct }))
    };
    if let Some(rho) = &opts.radius {
        return attempt(&Neighborhoods::new(inst, rho));
    }
    for rho in radius_candidates(inst).iter() {
        if let Some(out) = attempt(&Neighborhoods::new(inst, rho))? {
            return Ok(Some(out));
        }
    }
    Ok(None)
}
