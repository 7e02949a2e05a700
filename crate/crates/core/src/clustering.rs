//! Flower clustering of fractional LP1 solutions, the cluster LP, and rounding.
//!
//! LP1 lives on a point subset `W`: one `x` (opening) and one `z` (coverage)
//! variable per point, with variables of points outside `W` fixed at zero.
//! Clustering turns a feasible `(x, z)` into disjoint flower clusters and a
//! feasible `y` for LP2, whose extreme points are then rounded.

use num_traits::{One, Zero};

use crate::dist::Rational;
use crate::error::{Error, Result};
use crate::lp::{self, FractionalSolution, LinearProgram, Sense};
use crate::model::{Class, Instance, Neighborhoods, PointSet, BLUE, RED};

/// LP1 restricted to `within`, with budget, per-class requirements and
/// points whose opening variable is forced to zero.
#[derive(Clone, Debug)]
pub struct Lp1Problem {
    pub within: PointSet,
    pub budget: usize,
    pub req: Vec<usize>,
    pub closed: PointSet,
}

/// Values of LP1 variables, indexed by point. Zero outside the subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lp1Solution {
    pub x: Vec<Rational>,
    pub z: Vec<Rational>,
}

impl Lp1Problem {
    /// LP1 over the whole instance.
    pub fn whole(inst: &Instance) -> Self {
        Lp1Problem {
            within: inst.all_points(),
            budget: inst.k(),
            req: inst.req().to_vec(),
            closed: inst.empty_set(),
        }
    }

    pub fn new(within: PointSet, budget: usize, req: Vec<usize>) -> Self {
        let closed = PointSet::with_capacity(within.len());
        Lp1Problem { within, budget, req, closed }
    }

    /// Variables: `x_i` is `i`, `z_j` is `n + j`. Rows: one cover row per
    /// point of the subset (in index order), the budget row, then one
    /// requirement row per class.
    pub fn build(&self, inst: &Instance, nb: &Neighborhoods) -> LinearProgram {
        let n = inst.n();
        let mut lp = LinearProgram::new(2 * n);
        for i in 0..n {
            if !self.within.contains(i) {
                lp.force_zero(i);
                lp.force_zero(n + i);
            } else if self.closed.contains(i) {
                lp.force_zero(i);
            }
        }
        let one = Rational::one();
        for j in self.within.ones() {
            let mut row: Vec<(usize, Rational)> =
                nb.ball(j).intersection(&self.within).map(|i| (i, one.clone())).collect();
            row.push((n + j, -one.clone()));
            lp.add_row(row, Sense::Ge, Rational::zero());
        }
        let budget_row = self.within.ones().map(|i| (i, one.clone())).collect();
        lp.add_row(budget_row, Sense::Le, Rational::from_integer(self.budget.into()));
        for (c, &need) in self.req.iter().enumerate() {
            let row = inst
                .class(c)
                .intersection(&self.within)
                .map(|j| (n + j, one.clone()))
                .collect();
            lp.add_row(row, Sense::Ge, Rational::from_integer(need.into()));
        }
        lp
    }

    /// A feasible point of LP1, or `None` when LP1 is infeasible.
    pub fn solve(&self, inst: &Instance, nb: &Neighborhoods) -> Result<Option<Lp1Solution>> {
        for (c, &need) in self.req.iter().enumerate() {
            if need > inst.class(c).intersection_count(&self.within) {
                return Ok(None);
            }
        }
        let sol = lp::solve_feasibility(&self.build(inst, nb))?;
        Ok(sol.is_feasible().then(|| Lp1Solution::from_values(inst.n(), sol.values)))
    }

    pub fn is_feasible_point(&self, inst: &Instance, nb: &Neighborhoods, sol: &Lp1Solution) -> bool {
        self.build(inst, nb).is_satisfied_by(&sol.values())
    }
}

impl Lp1Solution {
    pub fn from_values(n: usize, mut values: Vec<Rational>) -> Self {
        let z = values.split_off(n);
        Lp1Solution { x: values, z }
    }

    pub fn values(&self) -> Vec<Rational> {
        self.x.iter().chain(&self.z).cloned().collect()
    }
}

/// Output of the flower clustering.
#[derive(Clone, Debug)]
pub struct ClusterDecomposition {
    /// Selected centers, in selection order.
    pub centers: Vec<usize>,
    pub clusters: Vec<PointSet>,
    /// `counts[t][c]` is the number of class-`c` points in `clusters[t]`.
    pub counts: Vec<Vec<usize>>,
    /// `y` value of each selected center.
    pub y: Vec<Rational>,
    /// Per-point coverage lower bound assigned during clustering.
    pub z_tilde: Vec<Rational>,
}

impl ClusterDecomposition {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}

/// Greedy flower clustering: repeatedly select the remaining point of
/// largest `z` (lowest index on ties) and carve out its flower.
pub fn cluster(
    inst: &Instance,
    nb: &Neighborhoods,
    problem: &Lp1Problem,
    sol: &Lp1Solution,
) -> Result<ClusterDecomposition> {
    if !problem.is_feasible_point(inst, nb, sol) {
        return Err(Error::ContractViolation(
            "clustering needs a feasible LP1 point".into(),
        ));
    }
    let n = inst.n();
    let within = &problem.within;
    let mut remaining = within.clone();
    let mut dec = ClusterDecomposition {
        centers: Vec::new(),
        clusters: Vec::new(),
        counts: Vec::new(),
        y: Vec::new(),
        z_tilde: vec![Rational::zero(); n],
    };
    loop {
        let mut best: Option<usize> = None;
        for j in remaining.ones() {
            if sol.z[j].is_zero() {
                continue;
            }
            if best.is_none_or(|b| sol.z[j] > sol.z[b]) {
                best = Some(j);
            }
        }
        let Some(j) = best else { break };
        let opened: Rational = nb.ball(j).intersection(within).map(|i| &sol.x[i]).sum();
        let y = opened.min(Rational::one());
        let mut cl = nb.flower_in(j, within);
        cl.intersect_with(&remaining);
        for i in cl.ones() {
            dec.z_tilde[i] = y.clone();
        }
        remaining.difference_with(&cl);
        dec.counts.push(inst.class_counts(&cl));
        dec.centers.push(j);
        dec.clusters.push(cl);
        dec.y.push(y);
    }
    Ok(dec)
}

/// The cluster LP: maximize the `objective` class count subject to the
/// other classes' requirements and the center budget. Variable `t` is the
/// `y` of `dec.centers[t]`. Rows: other classes in ascending order, then
/// the budget row.
pub fn build_lp2(dec: &ClusterDecomposition, objective: Class, req: &[usize], budget: usize) -> LinearProgram {
    let m = dec.len();
    let mut lp = LinearProgram::new(m);
    let count = |t: usize, c: Class| Rational::from_integer(dec.counts[t][c].into());
    for (c, &need) in req.iter().enumerate() {
        if c == objective {
            continue;
        }
        let row = (0..m).map(|t| (t, count(t, c))).collect();
        lp.add_row(row, Sense::Ge, Rational::from_integer(need.into()));
    }
    let row = (0..m).map(|t| (t, Rational::one())).collect();
    lp.add_row(row, Sense::Le, Rational::from_integer(budget.into()));
    lp.set_objective((0..m).map(|t| (t, count(t, objective))).collect(), true);
    lp
}

/// An optimal vertex of the cluster LP whose objective meets the
/// objective class requirement, or `None`.
pub fn solve_lp2(
    dec: &ClusterDecomposition,
    objective: Class,
    req: &[usize],
    budget: usize,
) -> Result<Option<FractionalSolution>> {
    let sol = lp::solve_extreme_max(&build_lp2(dec, objective, req, budget))?;
    if !sol.is_feasible() {
        return Ok(None);
    }
    let value = sol.objective.clone().unwrap_or_default();
    Ok((value >= Rational::from_integer(req[objective].into())).then_some(sol))
}

/// Every center with positive `y`.
pub fn round_keep_all(dec: &ClusterDecomposition, lp2: &FractionalSolution) -> Vec<usize> {
    let mut out: Vec<usize> = (0..dec.len())
        .filter(|&t| !lp2.values[t].is_zero())
        .map(|t| dec.centers[t])
        .collect();
    out.sort_unstable();
    out
}

/// Integral centers plus the single fractional center whose cluster holds
/// the most `full` points (ties: more `tie` points, then lower index).
pub fn round_keep_best(
    dec: &ClusterDecomposition,
    lp2: &FractionalSolution,
    full: Class,
    tie: Class,
) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best: Option<usize> = None;
    for t in 0..dec.len() {
        let v = &lp2.values[t];
        if v.is_one() {
            out.push(dec.centers[t]);
        } else if !v.is_zero() {
            let key = |t: usize| (dec.counts[t][full], dec.counts[t][tie], std::cmp::Reverse(dec.centers[t]));
            if best.is_none_or(|b| key(t) > key(b)) {
                best = Some(t);
            }
        }
    }
    out.extend(best.map(|t| dec.centers[t]));
    out.sort_unstable();
    out
}

/// Two-color drop-one rounding: keep the fractional cluster with more blue
/// points (ties: more red, then lower index).
pub fn round_drop_one(dec: &ClusterDecomposition, lp2: &FractionalSolution) -> Vec<usize> {
    round_keep_best(dec, lp2, BLUE, RED)
}

/// Integral centers plus the best fractional ones, at most `max_centers`
/// in total. Fractional centers are ranked by `full` count, then `tie`
/// count, then lower index.
pub fn round_top(
    dec: &ClusterDecomposition,
    lp2: &FractionalSolution,
    max_centers: usize,
    full: Class,
    tie: Class,
) -> Vec<usize> {
    let mut out = Vec::new();
    let mut frac = Vec::new();
    for t in 0..dec.len() {
        let v = &lp2.values[t];
        if v.is_one() {
            out.push(dec.centers[t]);
        } else if !v.is_zero() {
            frac.push(t);
        }
    }
    frac.sort_by_key(|&t| (std::cmp::Reverse((dec.counts[t][full], dec.counts[t][tie])), dec.centers[t]));
    let room = max_centers.saturating_sub(out.len());
    out.extend(frac.into_iter().take(room).map(|t| dec.centers[t]));
    out.sort_unstable();
    out
}

/// How fractional cluster centers are rounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Open every center with positive `y`.
    KeepAll,
    /// Open integral centers and the best fractional one for `full`.
    KeepBest { full: Class },
    /// Open integral centers and the best fractional ones for `full`, up to a total.
    Top { max_centers: usize, full: Class },
}

/// Every intermediate result of one LP clustering pass.
#[derive(Clone, Debug)]
pub struct PseudoRun {
    pub lp1: Lp1Solution,
    pub decomposition: ClusterDecomposition,
    pub lp2: FractionalSolution,
    pub centers: Vec<usize>,
}

/// LP1, clustering, cluster LP and rounding in one pass. `None` when LP1 or
/// the cluster LP gives no usable point. `objective` is the class the
/// cluster LP maximizes.
pub fn pseudo_run(
    inst: &Instance,
    nb: &Neighborhoods,
    problem: &Lp1Problem,
    objective: Class,
    rounding: Rounding,
) -> Result<Option<PseudoRun>> {
    let Some(lp1) = problem.solve(inst, nb)? else {
        return Ok(None);
    };
    let decomposition = cluster(inst, nb, problem, &lp1)?;
    let Some(lp2) = solve_lp2(&decomposition, objective, &problem.req, problem.budget)? else {
        return Ok(None);
    };
    let centers = match rounding {
        Rounding::KeepAll => round_keep_all(&decomposition, &lp2),
        Rounding::KeepBest { full } => round_keep_best(&decomposition, &lp2, full, objective),
        Rounding::Top { max_centers, full } => round_top(&decomposition, &lp2, max_centers, full, objective),
    };
    Ok(Some(PseudoRun { lp1, decomposition, lp2, centers }))
}

/// [`pseudo_run`], keeping only the centers.
pub fn cluster_and_round(
    inst: &Instance,
    nb: &Neighborhoods,
    problem: &Lp1Problem,
    objective: Class,
    rounding: Rounding,
) -> Result<Option<Vec<usize>>> {
    Ok(pseudo_run(inst, nb, problem, objective, rounding)?.map(|run| run.centers))
}
