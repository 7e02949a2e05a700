//! Exhaustive solvers used as ground truth.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::model::{radius_candidates, verify, Instance, PointSet, Solution};

/// Upper limit on the number of center subsets one feasibility check may enumerate.
pub const SUBSET_LIMIT: u128 = 10_000_000;

/// Groups accepted by [`group_knapsack_enum`].
pub const GROUP_LIMIT: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub radius: Dist,
    pub solution: Solution,
    /// Search nodes visited over all feasibility checks.
    pub examined: u64,
}

fn subsets_up_to(m: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for s in 0..=k.min(m) {
        total = total.saturating_add(c);
        c = c.saturating_mul((m - s) as u128) / (s as u128 + 1);
    }
    total
}

fn balls_at(inst: &Instance, radius: &Dist) -> Vec<PointSet> {
    let n = inst.n();
    let metric = inst.metric();
    let t = metric.threshold(radius);
    (0..n)
        .map(|j| {
            let mut b = PointSet::with_capacity(n);
            for i in 0..n {
                if metric.within(i, j, t) {
                    b.insert(i);
                }
            }
            b
        })
        .collect()
}

/// Centers worth trying: a center is dropped when another center's ball
/// contains its ball (strictly, or equally with a lower index).
pub fn reduced_centers(inst: &Instance, radius: &Dist) -> Vec<usize> {
    let balls = balls_at(inst, radius);
    (0..inst.n())
        .filter(|&j| {
            // a dominating ball must contain j itself
            !balls[j].ones().any(|i| {
                i != j
                    && balls[j].is_subset(&balls[i])
                    && (i < j || balls[j] != balls[i])
            })
        })
        .collect()
}

struct Search<'a> {
    balls: Vec<PointSet>,
    centers: Vec<usize>,
    classes: Vec<&'a PointSet>,
    req: &'a [usize],
    k: usize,
    /// Largest per-class count of any single candidate ball.
    best_gain: Vec<usize>,
    examined: u64,
}

impl Search<'_> {
    fn covered(&self, set: &PointSet) -> Vec<usize> {
        self.classes.iter().map(|c| c.intersection_count(set)).collect()
    }

    fn dfs(&mut self, start: usize, chosen: &mut Vec<usize>, union: &PointSet) -> bool {
        self.examined += 1;
        let have = self.covered(union);
        if have.iter().zip(self.req).all(|(h, r)| h >= r) {
            return true;
        }
        let slots = self.k - chosen.len();
        if slots == 0 {
            return false;
        }
        let reachable = have
            .iter()
            .zip(&self.best_gain)
            .zip(self.req)
            .all(|((h, g), r)| h + slots * g >= *r);
        if !reachable {
            return false;
        }
        for t in start..self.balls.len() {
            if self.balls[t].is_subset(union) {
                continue;
            }
            let mut next = union.clone();
            next.union_with(&self.balls[t]);
            chosen.push(self.centers[t]);
            if self.dfs(t + 1, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// At most `k` centers whose balls of `radius` meet every requirement.
/// Returns the first such set in lexicographic search order.
pub fn feasible_at(inst: &Instance, radius: &Dist) -> Result<(Option<Vec<usize>>, u64)> {
    let centers = reduced_centers(inst, radius);
    search(inst, radius, centers)
}

/// [`feasible_at`] without the dominance reduction.
pub fn feasible_at_unreduced(inst: &Instance, radius: &Dist) -> Result<(Option<Vec<usize>>, u64)> {
    search(inst, radius, (0..inst.n()).collect())
}

fn search(inst: &Instance, radius: &Dist, centers: Vec<usize>) -> Result<(Option<Vec<usize>>, u64)> {
    let k = inst.k();
    let m = centers.len();
    if m > k {
        let count = subsets_up_to(m, k);
        if count > SUBSET_LIMIT {
            return Err(Error::Intractable(format!(
                "{count} center subsets of size <= {k} from {m} candidates exceed the limit of {SUBSET_LIMIT}"
            )));
        }
    }
    let all = balls_at(inst, radius);
    let balls: Vec<PointSet> = centers.iter().map(|&c| all[c].clone()).collect();
    let classes: Vec<&PointSet> = (0..inst.omega()).map(|c| inst.class(c)).collect();
    let best_gain = classes
        .iter()
        .map(|c| balls.iter().map(|b| c.intersection_count(b)).max().unwrap_or(0))
        .collect();
    let mut s = Search { balls, centers, classes, req: inst.req(), k, best_gain, examined: 0 };
    let mut chosen = Vec::new();
    let found = s.dfs(0, &mut chosen, &inst.empty_set());
    Ok((found.then_some(chosen), s.examined))
}

/// Exact optimum by binary search over the candidate radii.
pub fn exact_opt(inst: &Instance) -> Result<OracleResult> {
    let candidates = radius_candidates(inst);
    let radii = candidates.as_slice();
    let mut examined = 0;
    // the largest radius makes one ball cover everything
    let (mut lo, mut hi) = (0, radii.len() - 1);
    let (found, count) = feasible_at(inst, &radii[hi])?;
    examined += count;
    let mut best = found.ok_or_else(|| {
        Error::InvalidInstance("no center set meets the requirements at any radius".into())
    })?;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let (found, count) = feasible_at(inst, &radii[mid])?;
        examined += count;
        match found {
            Some(c) => {
                hi = mid;
                best = c;
            }
            None => lo = mid + 1,
        }
    }
    let radius = radii[hi].clone();
    let solution = verify(inst, &best, &radius)?;
    debug_assert!(solution.feasible);
    Ok(OracleResult { radius, solution, examined })
}

/// Whether some `k` of `values` (as a multiset) sum to `target`.
pub fn subset_sum(values: &[u64], k: usize, target: u64) -> bool {
    if k > values.len() {
        return false;
    }
    let cap = target as usize;
    // reach[c] has bit s set when some c values sum to s
    let mut reach = vec![PointSet::with_capacity(cap + 1); k + 1];
    reach[0].insert(0);
    for &v in values {
        if v > target {
            continue;
        }
        let v = v as usize;
        for c in (1..=k).rev() {
            let prev: Vec<usize> = reach[c - 1].ones().filter(|s| s + v <= cap).collect();
            for s in prev {
                reach[c].insert(s + v);
            }
        }
    }
    reach[k].contains(cap)
}

/// Item vectors by group: `groups[g][t]` is the per-class coverage of item `t` of group `g`.
pub type Groups = [Vec<Vec<usize>>];

/// Every `(count, coverage)` reachable by taking at most one item per group.
pub fn group_knapsack_reachable(groups: &Groups) -> Result<BTreeSet<(usize, Vec<usize>)>> {
    if groups.len() > GROUP_LIMIT {
        return Err(Error::Intractable(format!(
            "{} groups exceed the enumeration limit of {GROUP_LIMIT}",
            groups.len()
        )));
    }
    let dims = groups.iter().flatten().map(Vec::len).max().unwrap_or(0);
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; groups.len()];
    loop {
        // pick[g] == 0 skips the group, otherwise takes item pick[g] - 1
        let mut count = 0;
        let mut cover = vec![0usize; dims];
        for (g, &p) in pick.iter().enumerate() {
            if p > 0 {
                count += 1;
                for (c, v) in groups[g][p - 1].iter().enumerate() {
                    cover[c] += v;
                }
            }
        }
        out.insert((count, cover));
        let mut g = 0;
        loop {
            if g == groups.len() {
                return Ok(out);
            }
            pick[g] += 1;
            if pick[g] <= groups[g].len() {
                break;
            }
            pick[g] = 0;
            g += 1;
        }
    }
}

/// Whether exactly `count` items, at most one per group, sum to `target`.
pub fn group_knapsack_enum(groups: &Groups, count: usize, target: &[usize]) -> Result<bool> {
    let reach = group_knapsack_reachable(groups)?;
    let width = |v: &[usize]| v.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
    let target = &target[..width(target)];
    Ok(reach.iter().any(|(c, cover)| *c == count && &cover[..width(cover)] == target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[i64], labels: &[usize], k: usize, req: Vec<usize>) -> Instance {
        let coords = xs.iter().map(|&x| [x, 0]).collect();
        Instance::from_coords(coords, labels, k, req).unwrap()
    }

    #[test]
    fn enough_centers_give_radius_zero() {
        let inst = line(&[0, 3, 7], &[1, 2, 1], 3, vec![2, 1]);
        let res = exact_opt(&inst).unwrap();
        assert_eq!(res.radius, Dist::zero());
        assert!(res.solution.feasible);
    }

    #[test]
    fn one_center_on_a_line() {
        let inst = line(&[0, 2, 4, 10], &[1, 2, 1, 2], 1, vec![2, 1]);
        let res = exact_opt(&inst).unwrap();
        assert_eq!(res.radius, Dist::from_integer(2));
        assert_eq!(res.solution.centers, vec![1]);
    }

    #[test]
    fn reduction_drops_dominated_balls() {
        let inst = line(&[0, 1, 2, 2], &[1, 1, 1, 1], 1, vec![0]);
        // balls at radius 1: {0,1}, {0,1,2,3}, {1,2,3}, {1,2,3}
        assert_eq!(reduced_centers(&inst, &Dist::from_integer(1)), vec![1]);
        assert_eq!(reduced_centers(&inst, &Dist::zero()), vec![0, 1, 2]);
    }

    #[test]
    fn guard_trips_on_large_searches() {
        let xs: Vec<i64> = (0..60).map(|i| i * 10).collect();
        let labels = vec![1; 60];
        let inst = line(&xs, &labels, 8, vec![60]);
        assert!(matches!(feasible_at(&inst, &Dist::from_integer(1)), Err(Error::Intractable(_))));
    }

    #[test]
    fn subset_sum_examples() {
        assert!(subset_sum(&[1, 2, 3], 2, 5));
        assert!(!subset_sum(&[2, 2, 2], 2, 5));
        assert!(subset_sum(&[], 0, 0));
        assert!(!subset_sum(&[1], 2, 1));
        assert!(subset_sum(&[7, 1, 4], 2, 11));
    }

    #[test]
    fn group_knapsack_trivial_cases() {
        assert!(group_knapsack_enum(&[], 0, &[]).unwrap());
        assert!(group_knapsack_enum(&[], 0, &[0, 0]).unwrap());
        assert!(!group_knapsack_enum(&[], 1, &[0, 0]).unwrap());
        assert!(!group_knapsack_enum(&[], 1, &[]).unwrap());
        let groups = vec![vec![vec![1, 0], vec![0, 2]], vec![vec![1, 1]]];
        assert!(group_knapsack_enum(&groups, 2, &[1, 3]).unwrap());
        assert!(!group_knapsack_enum(&groups, 2, &[1, 2]).unwrap());
        assert!(!group_knapsack_enum(&groups, 2, &[1, 0]).unwrap());
        let too_many = vec![vec![vec![1]]; 7];
        assert!(group_knapsack_reachable(&too_many).is_err());
    }
}
