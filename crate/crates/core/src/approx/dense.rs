//! Removal of dense regions: balls holding many points of some watched
//! class are carved out together with every ball that shares enough points
//! of every watched class with them.

use serde::Serialize;

use crate::model::{Class, Instance, Neighborhoods, PointSet, RED};

#[derive(Clone, Debug)]
pub struct DenseStep {
    /// The dense point selected in this iteration.
    pub point: usize,
    /// Points whose balls share more than the threshold with the dense ball.
    pub members: PointSet,
    /// Union of the members' balls inside the sparse set at selection time.
    pub removed: PointSet,
}

#[derive(Clone, Debug)]
pub struct DenseDecomposition {
    pub steps: Vec<DenseStep>,
    pub sparse: PointSet,
    pub dense: PointSet,
    /// Watched classes and their thresholds.
    pub thresholds: Vec<(Class, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DenseSummary {
    pub points: Vec<usize>,
    pub group_sizes: Vec<usize>,
    pub removed: usize,
    pub thresholds: Vec<(Class, usize)>,
}

impl DenseDecomposition {
    pub fn summary(&self) -> DenseSummary {
        DenseSummary {
            points: self.steps.iter().map(|s| s.point).collect(),
            group_sizes: self.steps.iter().map(|s| s.members.count_ones(..)).collect(),
            removed: self.dense.count_ones(..),
            thresholds: self.thresholds.clone(),
        }
    }
}

/// Repeatedly removes the lowest-index dense point's region from `start`.
/// A point is dense when its ball holds more than `2 tau` red points of the
/// current sparse set.
pub fn dense_decompose(inst: &Instance, nb: &Neighborhoods, start: &PointSet, tau: usize) -> DenseDecomposition {
    dense_decompose_by(inst, nb, start, &[(RED, tau)])
}

/// Dense removal with one threshold per watched class. A point is dense
/// when its ball holds more than twice the threshold of some watched class;
/// its group is itself plus every point whose ball shares more than the
/// threshold with it in every watched class.
pub fn dense_decompose_by(
    inst: &Instance,
    nb: &Neighborhoods,
    start: &PointSet,
    thresholds: &[(Class, usize)],
) -> DenseDecomposition {
    let mut sparse = start.clone();
    let mut steps = Vec::new();
    let count_in = |set: &PointSet, sparse: &PointSet, c: Class| {
        let mut s = set.clone();
        s.intersect_with(sparse);
        s.intersection_count(inst.class(c))
    };
    loop {
        let dense_point = sparse
            .ones()
            .find(|&j| thresholds.iter().any(|&(c, t)| count_in(nb.ball(j), &sparse, c) > 2 * t));
        let Some(j) = dense_point else { break };
        let mut members = PointSet::with_capacity(inst.n());
        members.insert(j);
        for i in sparse.ones() {
            let mut shared = nb.ball(i).clone();
            shared.intersect_with(nb.ball(j));
            if thresholds.iter().all(|&(c, t)| count_in(&shared, &sparse, c) > t) {
                members.insert(i);
            }
        }
        let mut removed = PointSet::with_capacity(inst.n());
        for i in members.ones() {
            removed.union_with(nb.ball(i));
        }
        removed.intersect_with(&sparse);
        sparse.difference_with(&removed);
        steps.push(DenseStep { point: j, members, removed });
    }
    let mut dense = start.clone();
    dense.difference_with(&sparse);
    DenseDecomposition { steps, sparse, dense, thresholds: thresholds.to_vec() }
}
