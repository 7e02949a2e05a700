//! Clustering of the sparse remainder with heavy flowers closed.

use crate::clustering::{cluster_and_round, Lp1Problem, Rounding};
use crate::error::Result;
use crate::model::{Class, Instance, Neighborhoods, PointSet, BLUE, RED};

/// Points that may not be opened in the sparse set: every ball around a
/// point whose flower (inside `sparse`) holds more than `3 tau` red points.
pub fn closed_points(inst: &Instance, nb: &Neighborhoods, sparse: &PointSet, tau: usize) -> PointSet {
    closed_points_by(inst, nb, sparse, &[(RED, tau)])
}

/// Like [`closed_points`], closing around flowers that exceed three times
/// the threshold of any watched class.
pub fn closed_points_by(inst: &Instance, nb: &Neighborhoods, sparse: &PointSet, thresholds: &[(Class, usize)]) -> PointSet {
    let mut closed = inst.empty_set();
    for j in sparse.ones() {
        let flower = nb.flower_in(j, sparse);
        if thresholds.iter().any(|&(c, t)| flower.intersection_count(inst.class(c)) > 3 * t) {
            closed.union_with(&nb.ball_in(j, sparse));
        }
    }
    closed
}

/// Centers in `sparse` for `budget` balls of twice the radius, meeting the
/// blue requirement and the red one up to the heaviest open flower.
/// `closed` comes from [`closed_points`].
pub fn sparse_centers(
    inst: &Instance,
    nb: &Neighborhoods,
    sparse: &PointSet,
    closed: &PointSet,
    budget: usize,
    req: Vec<usize>,
) -> Result<Option<Vec<usize>>> {
    if req.iter().all(|&r| r == 0) {
        return Ok(Some(Vec::new()));
    }
    let mut problem = Lp1Problem::new(sparse.clone(), budget, req);
    problem.closed = closed.clone();
    cluster_and_round(inst, nb, &problem, RED, Rounding::KeepBest { full: BLUE })
}

/// [`sparse_centers`] computing the closed set itself.
pub fn algorithm_sparse(
    inst: &Instance,
    nb: &Neighborhoods,
    sparse: &PointSet,
    tau: usize,
    budget: usize,
    req: Vec<usize>,
) -> Result<Option<Vec<usize>>> {
    let closed = closed_points(inst, nb, sparse, tau);
    sparse_centers(inst, nb, sparse, &closed, budget, req)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Dist;

    #[test]
    fn zero_budget_zero_requirements() {
        let inst = Instance::from_coords(vec![[0, 0], [5, 0]], &[1, 2], 1, vec![1, 1]).unwrap();
        let nb = Neighborhoods::new(&inst, &Dist::from_integer(1));
        let got = algorithm_sparse(&inst, &nb, &inst.all_points(), 0, 0, vec![0, 0]).unwrap();
        assert_eq!(got, Some(vec![]));
    }

    #[test]
    fn requirement_beyond_the_sparse_set() {
        let inst = Instance::from_coords(vec![[0, 0], [5, 0], [9, 0]], &[1, 2, 1], 2, vec![1, 1]).unwrap();
        let nb = Neighborhoods::new(&inst, &Dist::from_integer(1));
        let mut sparse = inst.all_points();
        sparse.set(2, false);
        let got = algorithm_sparse(&inst, &nb, &sparse, 5, 2, vec![2, 0]).unwrap();
        assert_eq!(got, None);
        let got = algorithm_sparse(&inst, &nb, &sparse, 5, 2, vec![1, 1]).unwrap().unwrap();
        assert_eq!(got, vec![0, 1]);
    }

    #[test]
    fn heavy_flowers_are_closed() {
        // three red points in a row and one far blue point
        let inst = Instance::from_coords(vec![[0, 0], [1, 0], [2, 0], [9, 0]], &[1, 1, 1, 2], 2, vec![1, 1]).unwrap();
        let nb = Neighborhoods::new(&inst, &Dist::from_integer(1));
        let all = inst.all_points();
        let closed = closed_points(&inst, &nb, &all, 0);
        assert_eq!(closed.ones().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(closed_points(&inst, &nb, &all, 1).is_clear());
    }
}
