//! The solver for any number of color classes.
//!
//! One class is covered in full by the sparse rounding (by default the last
//! one); every other class may fall short there and is tracked by its own
//! chain of guessed centers, its own threshold and its own dense test. With
//! two classes every step coincides with [`crate::approx`].

use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use crate::approx::{
    checked, closed_points_by, dense_decompose_by, first_hit, phase_one::best_flower, radius_loop, Branch, DpTable,
    Outcome, SolveOptions, Trace,
};
use crate::clustering::{pseudo_run, Lp1Problem, PseudoRun, Rounding};
use crate::error::{invalid_arg, Error, Result};
use crate::model::{ball, Class, Instance, Neighborhoods, PointSet};
use crate::oracle;

/// Guess tuples tried per radius when there are three or more classes and
/// no budget is given.
pub const DEFAULT_GUESS_BUDGET: u64 = 20_000;

/// Which class is covered in full and which are allowed a deficit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRoles {
    pub full: Class,
    /// Every other class, ascending.
    pub deficit: Vec<Class>,
    /// Class maximized by the cluster LP: the lowest deficit class.
    pub objective: Class,
}

impl ClassRoles {
    /// `full` defaults to the last class.
    pub fn new(omega: usize, full: Option<Class>) -> Result<Self> {
        if omega < 2 {
            return Err(invalid_arg!("need at least two classes, got {omega}"));
        }
        let full = full.unwrap_or(omega - 1);
        if full >= omega {
            return Err(invalid_arg!("class {} does not exist", full + 1));
        }
        let deficit: Vec<Class> = (0..omega).filter(|&c| c != full).collect();
        Ok(ClassRoles { full, objective: deficit[0], deficit })
    }

    /// Guesses per deficit class.
    pub fn chain_len(&self) -> usize {
        3 * self.deficit.len()
    }

    /// Guesses in one tuple.
    pub fn tuple_len(&self) -> usize {
        self.chain_len() * self.deficit.len()
    }
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct MulticolorOptions {
    pub solve: SolveOptions,
    /// Class covered in full; `None` means the last class.
    pub full_class: Option<Class>,
    /// Guess tuples tried per radius, in lexicographic order. `None` means
    /// exhaustive for two classes and [`DEFAULT_GUESS_BUDGET`] otherwise.
    pub guess_budget: Option<u64>,
}


#[derive(Clone, Debug, Serialize)]
pub struct MulticolorOutcome {
    pub outcome: Option<Outcome>,
    /// Some radius stopped its guess enumeration at the budget, so a
    /// missing or large answer is not conclusive.
    pub budget_hit: bool,
}

/// LP1 over the whole instance, clustering, the cluster LP, and integral
/// centers plus the best fractional one for the full class. At most `k`
/// centers.
pub fn pseudo_approx_omega(inst: &Instance, nb: &Neighborhoods, roles: &ClassRoles) -> Result<Option<PseudoRun>> {
    let rounding = Rounding::KeepBest { full: roles.full };
    pseudo_run(inst, nb, &Lp1Problem::whole(inst), roles.objective, rounding)
}

/// As [`pseudo_approx_omega`] but opening every positive center: at most
/// `k + omega - 1` centers and no deficit.
pub fn pseudo_keep_all_omega(inst: &Instance, nb: &Neighborhoods, roles: &ClassRoles) -> Result<Option<PseudoRun>> {
    pseudo_run(inst, nb, &Lp1Problem::whole(inst), roles.objective, Rounding::KeepAll)
}

/// Largest allowed shortfall of `class` after rounding: `omega - 1` times
/// the heaviest flower, in that class, around a point LP1 covers at all.
pub fn deficit_bound(inst: &Instance, nb: &Neighborhoods, run: &PseudoRun, class: Class) -> usize {
    let heaviest = (0..inst.n())
        .filter(|&j| !num_traits::Zero::is_zero(&run.lp1.z[j]))
        .map(|j| nb.flower(j).intersection_count(inst.class(class)))
        .max()
        .unwrap_or(0);
    (inst.omega() - 1) * heaviest
}

/// Guessed chains for one tuple of guesses.
#[derive(Clone, Debug, Serialize)]
pub struct GuessChains {
    pub guesses: Vec<usize>,
    /// Flower center picked for each guess; `None` when the guessed ball
    /// has nothing left in its chain.
    pub flowers: Vec<Option<usize>>,
    /// Union of the guessed balls.
    #[serde(skip)]
    pub guessed: PointSet,
    pub guessed_counts: Vec<usize>,
    /// Threshold of each deficit class.
    pub thresholds: Vec<(Class, usize)>,
    /// Points outside every picked flower.
    #[serde(skip)]
    pub remaining: PointSet,
}

impl GuessChains {
    /// Distinct flower centers, ascending.
    pub fn opened(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.flowers.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Runs one chain per deficit class. Chain `d` uses the guesses
/// `d * len .. (d + 1) * len`; it starts from all points and removes, for
/// each guess, the flower in its ball that gains the most points of its
/// class. The threshold is the gain of the chain's last guess.
pub fn guess_chains(inst: &Instance, nb: &Neighborhoods, roles: &ClassRoles, guesses: &[usize]) -> Result<GuessChains> {
    if guesses.len() != roles.tuple_len() {
        return Err(invalid_arg!("expected {} guesses, got {}", roles.tuple_len(), guesses.len()));
    }
    for &c in guesses {
        inst.check_point(c)?;
    }
    let len = roles.chain_len();
    let mut flowers = Vec::with_capacity(guesses.len());
    let mut thresholds = Vec::with_capacity(roles.deficit.len());
    let mut guessed = inst.empty_set();
    let mut remaining = inst.all_points();
    for (d, &class) in roles.deficit.iter().enumerate() {
        let mut chain = inst.all_points();
        let mut last_gain = 0;
        for &c in &guesses[d * len..(d + 1) * len] {
            guessed.union_with(nb.ball(c));
            last_gain = 0;
            match best_flower(inst, nb, c, &chain, class) {
                Some((q, size)) => {
                    last_gain = size;
                    chain.difference_with(nb.flower(q));
                    remaining.difference_with(nb.flower(q));
                    flowers.push(Some(q));
                }
                None => flowers.push(None),
            }
        }
        thresholds.push((class, last_gain));
    }
    let guessed_counts = inst.class_counts(&guessed);
    Ok(GuessChains { guesses: guesses.to_vec(), flowers, guessed, guessed_counts, thresholds, remaining })
}

/// One tuple of guesses: chains, dense removal, knapsack over dense groups
/// and clustering of the sparse rest.
pub fn try_guess_tuple(
    inst: &Instance,
    nb: &Neighborhoods,
    roles: &ClassRoles,
    guesses: &[usize],
    trace: &Trace,
) -> Result<Option<crate::model::Solution>> {
    Trace::bump(&trace.triples, 1);
    let k = inst.k();
    let chains = guess_chains(inst, nb, roles, guesses)?;
    let opened = chains.opened();
    if opened.len() > k {
        return Ok(None);
    }
    let rest_budget = k - opened.len();
    let dec = dense_decompose_by(inst, nb, &chains.remaining, &chains.thresholds);
    Trace::bump(&trace.dense_steps, dec.steps.len() as u64);
    let table = DpTable::from_decomposition(inst, nb, &dec, rest_budget);
    let closed = closed_points_by(inst, nb, &dec.sparse, &chains.thresholds);
    let outer = nb.radius().scaled(2);
    for k_d in 0..=table.max_count() {
        for cover in table.frontier(k_d) {
            let dense_centers = table.reconstruct(&cover, k_d).expect("frontier cells are reachable");
            let req: Vec<usize> = inst
                .req()
                .iter()
                .enumerate()
                .map(|(c, r)| r.saturating_sub(chains.guessed_counts[c] + cover[c]))
                .collect();
            Trace::bump(&trace.sparse_calls, 1);
            let sparse_centers = if req.iter().all(|&r| r == 0) {
                Vec::new()
            } else {
                let mut problem = Lp1Problem::new(dec.sparse.clone(), rest_budget - k_d, req);
                problem.closed = closed.clone();
                let rounding = Rounding::KeepBest { full: roles.full };
                match pseudo_run(inst, nb, &problem, roles.objective, rounding)? {
                    Some(run) => run.centers,
                    None => continue,
                }
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

/// The `index`-th tuple of `len` guesses over `n` points in lexicographic order.
pub fn guess_tuple(n: usize, len: usize, mut index: u128) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % n as u128) as usize;
        index /= n as u128;
    }
    out
}

fn tuple_count(n: usize, len: usize) -> Option<u128> {
    (0..len).try_fold(1u128, |acc, _| acc.checked_mul(n as u128))
}

/// Opens a ball of radius `3 rho` and clusters the rest with `k - 2`
/// centers, keeping at most `k - 1` of them.
fn merged_ball(inst: &Instance, nb: &Neighborhoods, roles: &ClassRoles, trace: &Trace) -> Result<Option<Outcome>> {
    let k = inst.k();
    if k < 2 {
        return Ok(None);
    }
    let wide = nb.radius().scaled(3);
    let found = first_hit(inst.n(), |p| {
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
            let rounding = Rounding::Top { max_centers: k - 1, full: roles.full };
            pseudo_run(inst, nb, &problem, roles.objective, rounding)?.map(|run| run.centers)
        };
        let Some(mut centers) = others else { return Ok(None) };
        centers.push(p);
        Ok(checked(inst, &centers, &wide, trace)?.map(|s| (s, p)))
    })?;
    Ok(found.map(|(solution, center)| Outcome {
        solution,
        guess_radius: nb.radius().clone(),
        branch: Branch::MergedBall { center },
    }))
}

fn small_budget(inst: &Instance, nb: &Neighborhoods, roles: &ClassRoles, trace: &Trace) -> Result<Option<Outcome>> {
    let rho = nb.radius().clone();
    if let Some(run) = pseudo_keep_all_omega(inst, nb, roles)? {
        if run.centers.len() <= inst.k() {
            if let Some(solution) = checked(inst, &run.centers, &rho.scaled(2), trace)? {
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

/// Both branches at one radius. Sets `budget_hit` when the guess
/// enumeration was cut short.
pub fn solve_omega_at(
    inst: &Instance,
    nb: &Neighborhoods,
    roles: &ClassRoles,
    guess_budget: Option<u64>,
    trace: &Trace,
    budget_hit: &AtomicBool,
) -> Result<Option<Outcome>> {
    Trace::bump(&trace.radii, 1);
    if let Some(out) = merged_ball(inst, nb, roles, trace)? {
        return Ok(Some(out));
    }
    if inst.k() < roles.chain_len() {
        return small_budget(inst, nb, roles, trace);
    }
    let n = inst.n();
    let len = roles.tuple_len();
    let total = tuple_count(n, len);
    let budget = guess_budget.or((roles.deficit.len() > 1).then_some(DEFAULT_GUESS_BUDGET));
    let limit = match (total, budget) {
        (Some(t), Some(b)) if t > b as u128 => {
            budget_hit.store(true, Ordering::Relaxed);
            b as u128
        }
        (Some(t), _) => t,
        (None, Some(b)) => {
            budget_hit.store(true, Ordering::Relaxed);
            b as u128
        }
        (None, None) => return Err(Error::Intractable(format!("{n}^{len} guess tuples"))),
    };
    let limit = usize::try_from(limit).map_err(|_| Error::Intractable(format!("{limit} guess tuples")))?;
    let found = first_hit(limit, |t| {
        let g = guess_tuple(n, len, t as u128);
        Ok(try_guess_tuple(inst, nb, roles, &g, trace)?.map(|s| (s, g)))
    })?;
    Ok(found.map(|(solution, guesses)| Outcome {
        solution,
        guess_radius: nb.radius().clone(),
        branch: Branch::Separated { guesses },
    }))
}

/// Full solver for any number of classes.
pub fn solve_omega_with(inst: &Instance, opts: &MulticolorOptions, trace: &Trace) -> Result<MulticolorOutcome> {
    let roles = ClassRoles::new(inst.omega(), opts.full_class)?;
    let budget_hit = AtomicBool::new(false);
    let outcome = radius_loop(inst, &opts.solve, trace, |nb| {
        solve_omega_at(inst, nb, &roles, opts.guess_budget, trace, &budget_hit)
    })?;
    Ok(MulticolorOutcome { outcome, budget_hit: budget_hit.load(Ordering::Relaxed) })
}

/// [`solve_omega_with`] with default options.
pub fn solve_omega(inst: &Instance) -> Result<crate::model::Solution> {
    let out = solve_omega_with(inst, &MulticolorOptions::default(), &Trace::default())?;
    Ok(out.outcome.expect("the radius loop always finds a solution").solution)
}
