//! Instances, solutions and metric queries.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::error::{invalid_arg, Error, Result};

/// A set of point indices, sized to the instance.
pub type PointSet = FixedBitSet;

/// Color class index, zero based. Class `0` is red and class `1` is blue
/// in two-color instances; files use the one-based labels `1` and `2`.
pub type Class = usize;
pub const RED: Class = 0;
pub const BLUE: Class = 1;

/// Outcome of the triangle-inequality pass run at construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleCheck {
    /// Holds by construction (coordinates or a generator).
    ByConstruction,
    /// Checked over all triples.
    Verified,
    /// `d(i, j) > d(i, m) + d(m, j)` for the recorded triple.
    Violated { i: usize, j: usize, via: usize },
    /// Too large to check exhaustively.
    Unchecked,
}

const TRIANGLE_CHECK_LIMIT: usize = 1000;

/// Pairwise distances, stored as ranks into the sorted list of distinct values.
#[derive(Clone, Debug)]
pub struct Metric {
    n: usize,
    levels: Vec<Dist>,
    rank: Vec<u32>,
    triangle: TriangleCheck,
}

/// Comparison threshold for a fixed radius: `d(i, j) <= r` iff `rank(i, j) < t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Threshold(u32);

impl Metric {
    /// Euclidean distances between integer points.
    pub fn from_coords(coords: &[[i64; 2]]) -> Self {
        let n = coords.len();
        let sq = |i: usize, j: usize| {
            let dx = (coords[i][0] - coords[j][0]) as i128;
            let dy = (coords[i][1] - coords[j][1]) as i128;
            dx * dx + dy * dy
        };
        let mut distinct = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                distinct.insert(sq(i, j));
            }
        }
        distinct.insert(0);
        let values: Vec<i128> = distinct.into_iter().collect();
        let mut rank = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                rank[i * n + j] = values.binary_search(&sq(i, j)).unwrap() as u32;
            }
        }
        let levels = values
            .into_iter()
            .map(|v| {
                Dist::from_squared(crate::dist::Rational::from_integer(v.into())).unwrap()
            })
            .collect();
        Metric { n, levels, rank, triangle: TriangleCheck::ByConstruction }
    }

    /// Explicit symmetric matrix of rational distances.
    pub fn from_matrix(matrix: Vec<Vec<Dist>>) -> Result<Self> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "distance matrix row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if !row[i].is_zero() {
                return Err(Error::InvalidInstance(format!("d({i},{i}) is not zero")));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidInstance(format!(
                        "distance matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let mut levels: Vec<Dist> = matrix.iter().flatten().cloned().collect();
        levels.push(Dist::zero());
        levels.sort();
        levels.dedup();
        let mut rank = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                rank[i * n + j] = levels.binary_search(&matrix[i][j]).unwrap() as u32;
            }
        }
        let mut metric = Metric { n, levels, rank, triangle: TriangleCheck::Unchecked };
        metric.triangle = metric.check_triangle();
        Ok(metric)
    }

    /// Builds a metric from sorted distinct `levels` and a rank matrix.
    /// Used by generators whose constructions are metrics by design.
    pub(crate) fn from_levels(n: usize, levels: Vec<Dist>, rank: Vec<u32>) -> Self {
        debug_assert!(levels.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(rank.len(), n * n);
        Metric { n, levels, rank, triangle: TriangleCheck::ByConstruction }
    }

    fn check_triangle(&self) -> TriangleCheck {
        let n = self.n;
        if n > TRIANGLE_CHECK_LIMIT {
            return TriangleCheck::Unchecked;
        }
        // max_sum[a][b] = largest level index c with levels[c] <= levels[a] + levels[b]
        let v = self.levels.len();
        if v > 2048 {
            return TriangleCheck::Unchecked;
        }
        let mut max_sum = vec![0u32; v * v];
        for a in 0..v {
            let mut c = 0;
            for b in a..v {
                // monotone in b
                while c + 1 < v && self.levels[c + 1].le_sum(&self.levels[a], &self.levels[b]) {
                    c += 1;
                }
                max_sum[a * v + b] = c as u32;
                max_sum[b * v + a] = c as u32;
            }
        }
        for i in 0..n {
            for m in 0..n {
                let a = self.rank[i * n + m] as usize;
                for j in 0..n {
                    let b = self.rank[m * n + j] as usize;
                    if self.rank[i * n + j] > max_sum[a * v + b] {
                        return TriangleCheck::Violated { i, j, via: m };
                    }
                }
            }
        }
        TriangleCheck::Verified
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: usize, j: usize) -> &Dist {
        &self.levels[self.rank[i * self.n + j] as usize]
    }

    /// Sorted distinct distance values, `0` included.
    pub fn levels(&self) -> &[Dist] {
        &self.levels
    }

    pub fn triangle(&self) -> &TriangleCheck {
        &self.triangle
    }

    pub fn threshold(&self, radius: &Dist) -> Threshold {
        Threshold(self.levels.partition_point(|d| d <= radius) as u32)
    }

    #[inline]
    pub fn within(&self, i: usize, j: usize, t: Threshold) -> bool {
        self.rank[i * self.n + j] < t.0
    }

    pub(crate) fn max_level(&self) -> &Dist {
        self.levels.last().expect("levels always contain zero")
    }
}

/// A colorful k-center instance.
#[derive(Clone, Debug)]
pub struct Instance {
    metric: Metric,
    colors: Vec<Class>,
    classes: Vec<PointSet>,
    k: usize,
    req: Vec<usize>,
    coords: Option<Vec<[i64; 2]>>,
}

impl Instance {
    /// `labels` are one-based color labels in `1..=req.len()`.
    pub fn new(metric: Metric, labels: &[usize], k: usize, req: Vec<usize>) -> Result<Self> {
        let n = metric.n();
        let omega = req.len();
        if labels.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{} color labels for {n} points",
                labels.len()
            )));
        }
        if omega == 0 {
            return Err(Error::InvalidInstance("no color classes".into()));
        }
        let mut classes = vec![PointSet::with_capacity(n); omega];
        let mut colors = Vec::with_capacity(n);
        for (i, &label) in labels.iter().enumerate() {
            if label == 0 || label > omega {
                return Err(Error::InvalidInstance(format!(
                    "point {i} has color {label}, expected 1..={omega}"
                )));
            }
            colors.push(label - 1);
            classes[label - 1].insert(i);
        }
        if k > n {
            return Err(Error::InvalidInstance(format!("k = {k} exceeds n = {n}")));
        }
        for (c, (&p, class)) in req.iter().zip(&classes).enumerate() {
            let size = class.count_ones(..);
            if p > size {
                return Err(Error::InvalidInstance(format!(
                    "color {} requires {p} points but has only {size}",
                    c + 1
                )));
            }
        }
        if k == 0 && req.iter().any(|&p| p > 0) {
            return Err(Error::InvalidInstance(
                "k = 0 cannot meet positive requirements".into(),
            ));
        }
        Ok(Instance { metric, colors, classes, k, req, coords: None })
    }

    pub fn from_coords(coords: Vec<[i64; 2]>, labels: &[usize], k: usize, req: Vec<usize>) -> Result<Self> {
        let metric = Metric::from_coords(&coords);
        let mut inst = Instance::new(metric, labels, k, req)?;
        inst.coords = Some(coords);
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.metric.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn omega(&self) -> usize {
        self.req.len()
    }

    pub fn req(&self) -> &[usize] {
        &self.req
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn coords(&self) -> Option<&[[i64; 2]]> {
        self.coords.as_deref()
    }

    pub fn color(&self, i: usize) -> Class {
        self.colors[i]
    }

    /// One-based labels, as written in instance files.
    pub fn labels(&self) -> Vec<usize> {
        self.colors.iter().map(|c| c + 1).collect()
    }

    pub fn class(&self, c: Class) -> &PointSet {
        &self.classes[c]
    }

    pub fn dist(&self, i: usize, j: usize) -> &Dist {
        self.metric.dist(i, j)
    }

    pub fn all_points(&self) -> PointSet {
        let mut s = PointSet::with_capacity(self.n());
        s.insert_range(..);
        s
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::with_capacity(self.n())
    }

    /// Per-class sizes of `set`.
    pub fn class_counts(&self, set: &PointSet) -> Vec<usize> {
        self.classes.iter().map(|c| c.intersection_count(set)).collect()
    }

    pub fn with_k(&self, k: usize) -> Result<Self> {
        let mut inst = Instance::new(self.metric.clone(), &self.labels(), k, self.req.clone())?;
        inst.coords = self.coords.clone();
        Ok(inst)
    }

    pub(crate) fn check_point(&self, j: usize) -> Result<()> {
        if j >= self.n() {
            return Err(invalid_arg!("point {j} out of range 0..{}", self.n()));
        }
        Ok(())
    }
}

/// Balls and flowers of one radius for every point.
#[derive(Clone, Debug)]
pub struct Neighborhoods {
    radius: Dist,
    balls: Vec<PointSet>,
    flowers: Vec<PointSet>,
}

impl Neighborhoods {
    pub fn new(inst: &Instance, radius: &Dist) -> Self {
        let n = inst.n();
        let metric = inst.metric();
        let t = metric.threshold(radius);
        let balls: Vec<PointSet> = (0..n)
            .map(|j| {
                let mut b = PointSet::with_capacity(n);
                for i in 0..n {
                    if metric.within(i, j, t) {
                        b.insert(i);
                    }
                }
                b
            })
            .collect();
        let flowers = (0..n)
            .map(|j| {
                let mut f = PointSet::with_capacity(n);
                for i in balls[j].ones() {
                    f.union_with(&balls[i]);
                }
                f
            })
            .collect();
        Neighborhoods { radius: radius.clone(), balls, flowers }
    }

    pub fn radius(&self) -> &Dist {
        &self.radius
    }

    pub fn ball(&self, j: usize) -> &PointSet {
        &self.balls[j]
    }

    /// Flower over the whole point set.
    pub fn flower(&self, j: usize) -> &PointSet {
        &self.flowers[j]
    }

    /// `B(j) ∩ within`.
    pub fn ball_in(&self, j: usize, within: &PointSet) -> PointSet {
        let mut b = self.balls[j].clone();
        b.intersect_with(within);
        b
    }

    /// Flower computed inside `within`: the union of `B(i) ∩ within`
    /// over `i ∈ B(j) ∩ within`.
    pub fn flower_in(&self, j: usize, within: &PointSet) -> PointSet {
        let mut f = PointSet::with_capacity(within.len());
        for i in self.balls[j].intersection(within) {
            f.union_with(&self.balls[i]);
        }
        f.intersect_with(within);
        f
    }
}

/// Centers with a radius and the exact per-class coverage they achieve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub centers: Vec<usize>,
    pub radius: Dist,
    pub covered: Vec<usize>,
    pub feasible: bool,
}

impl Solution {
    /// Recomputes coverage and feasibility and compares with the stored values.
    pub fn recheck(&self, inst: &Instance) -> Result<bool> {
        let fresh = verify(inst, &self.centers, &self.radius)?;
        Ok(fresh == *self)
    }
}

/// Ball of radius `radius` around `j`.
pub fn ball(inst: &Instance, j: usize, radius: &Dist) -> Result<PointSet> {
    inst.check_point(j)?;
    let metric = inst.metric();
    let t = metric.threshold(radius);
    let mut b = inst.empty_set();
    for i in 0..inst.n() {
        if metric.within(i, j, t) {
            b.insert(i);
        }
    }
    Ok(b)
}

/// Union of the `radius`-balls around every point of `ball(j, radius)`.
pub fn flower(inst: &Instance, j: usize, radius: &Dist) -> Result<PointSet> {
    let center_ball = ball(inst, j, radius)?;
    let mut f = inst.empty_set();
    for i in center_ball.ones() {
        f.union_with(&ball(inst, i, radius)?);
    }
    Ok(f)
}

/// Exact coverage of `centers` at `radius`; centers are deduplicated and sorted.
pub fn verify(inst: &Instance, centers: &[usize], radius: &Dist) -> Result<Solution> {
    for &c in centers {
        inst.check_point(c)?;
    }
    let mut centers = centers.to_vec();
    centers.sort_unstable();
    centers.dedup();
    let metric = inst.metric();
    let t = metric.threshold(radius);
    let mut covered = vec![0usize; inst.omega()];
    for i in 0..inst.n() {
        if centers.iter().any(|&c| metric.within(i, c, t)) {
            covered[inst.color(i)] += 1;
        }
    }
    let feasible = centers.len() <= inst.k()
        && covered.iter().zip(inst.req()).all(|(have, need)| have >= need);
    Ok(Solution { centers, radius: radius.clone(), covered, feasible })
}

/// Sorted distinct pairwise distances, `0` included. The optimal radius is one of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusCandidates(Vec<Dist>);

impl RadiusCandidates {
    pub fn as_slice(&self) -> &[Dist] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, r: &Dist) -> bool {
        self.0.binary_search(r).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Dist> {
        self.0.iter()
    }
}

pub fn radius_candidates(inst: &Instance) -> RadiusCandidates {
    RadiusCandidates(inst.metric().levels().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{int, rat};

    fn line(xs: &[i64]) -> Instance {
        let coords = xs.iter().map(|&x| [x, 0]).collect();
        let labels = vec![1; xs.len()];
        Instance::from_coords(coords, &labels, 1, vec![0]).unwrap()
    }

    fn members(s: &PointSet) -> Vec<usize> {
        s.ones().collect()
    }

    #[test]
    fn ball_on_a_line() {
        let inst = line(&[0, 1, 2, 4]);
        let b = ball(&inst, 1, &Dist::from_integer(1)).unwrap();
        assert_eq!(members(&b), vec![0, 1, 2]);
        assert_eq!(members(&ball(&inst, 3, &Dist::zero()).unwrap()), vec![3]);
        assert!(ball(&inst, 4, &Dist::zero()).is_err());
    }

    #[test]
    fn zero_radius_ball_holds_coincident_points() {
        let inst = Instance::from_coords(vec![[1, 1], [1, 1], [2, 1]], &[1, 2, 1], 1, vec![0, 0]).unwrap();
        assert_eq!(members(&ball(&inst, 0, &Dist::zero()).unwrap()), vec![0, 1]);
    }

    #[test]
    fn flowers_on_lines() {
        let inst = line(&[0, 1, 2, 4]);
        assert_eq!(members(&flower(&inst, 1, &Dist::from_integer(1)).unwrap()), vec![0, 1, 2]);
        assert_eq!(members(&flower(&inst, 3, &Dist::from_integer(1)).unwrap()), vec![3]);
        let inst = line(&[0, 1, 2, 3]);
        assert_eq!(members(&flower(&inst, 1, &Dist::from_integer(1)).unwrap()), vec![0, 1, 2, 3]);
    }

    #[test]
    fn neighborhoods_restrict_flowers() {
        let inst = line(&[0, 1, 2, 3]);
        let nb = Neighborhoods::new(&inst, &Dist::from_integer(1));
        assert_eq!(members(nb.flower(1)), vec![0, 1, 2, 3]);
        let mut within = inst.all_points();
        within.set(2, false);
        assert_eq!(members(&nb.flower_in(1, &within)), vec![0, 1]);
        assert_eq!(members(&nb.ball_in(1, &within)), vec![0, 1]);
    }

    #[test]
    fn verify_full_and_empty_cover() {
        let inst = Instance::from_coords(
            vec![[0, 0], [3, 4], [6, 8], [1, 1]],
            &[1, 2, 2, 1],
            4,
            vec![2, 2],
        )
        .unwrap();
        let max = inst.metric().max_level().clone();
        let all = verify(&inst, &[0, 1, 2, 3], &max).unwrap();
        assert_eq!(all.covered, vec![2, 2]);
        assert!(all.feasible);
        let none = verify(&inst, &[], &max).unwrap();
        assert_eq!(none.covered, vec![0, 0]);
        assert!(!none.feasible);
        assert!(all.recheck(&inst).unwrap());
    }

    #[test]
    fn candidates_on_a_line() {
        let inst = line(&[0, 1, 3]);
        let rc = radius_candidates(&inst);
        let want: Vec<Dist> = [0, 1, 2, 3].iter().map(|&v| Dist::from_integer(v)).collect();
        assert_eq!(rc.as_slice(), &want[..]);
        assert_eq!(radius_candidates(&line(&[5])).as_slice(), &[Dist::zero()]);
        assert_eq!(radius_candidates(&line(&[2, 2, 2])).as_slice(), &[Dist::zero()]);
    }

    #[test]
    fn irrational_distances_stay_exact() {
        let inst = Instance::from_coords(vec![[0, 0], [1, 1]], &[1, 1], 1, vec![1]).unwrap();
        let r = Dist::from_rational(rat(141, 100)).unwrap();
        assert_eq!(members(&ball(&inst, 0, &r).unwrap()), vec![0]);
        let r = Dist::from_rational(rat(142, 100)).unwrap();
        assert_eq!(members(&ball(&inst, 0, &r).unwrap()), vec![0, 1]);
    }

    #[test]
    fn rejects_bad_instances() {
        let m = || Metric::from_coords(&[[0, 0], [1, 0]]);
        assert!(Instance::new(m(), &[1, 3], 1, vec![0, 0]).is_err());
        assert!(Instance::new(m(), &[1, 1], 3, vec![0]).is_err());
        assert!(Instance::new(m(), &[1, 2], 1, vec![2, 0]).is_err());
        assert!(Instance::new(m(), &[1, 2], 0, vec![1, 0]).is_err());
        assert!(Instance::new(m(), &[1, 2], 0, vec![0, 0]).is_ok());
    }

    #[test]
    fn matrix_validation() {
        let d = |v: i64| Dist::from_rational(int(v)).unwrap();
        let good = Metric::from_matrix(vec![
            vec![d(0), d(1), d(2)],
            vec![d(1), d(0), d(1)],
            vec![d(2), d(1), d(0)],
        ])
        .unwrap();
        assert_eq!(good.triangle(), &TriangleCheck::Verified);
        let bad = Metric::from_matrix(vec![
            vec![d(0), d(1), d(5)],
            vec![d(1), d(0), d(1)],
            vec![d(5), d(1), d(0)],
        ])
        .unwrap();
        assert!(matches!(bad.triangle(), TriangleCheck::Violated { .. }));
        assert!(Metric::from_matrix(vec![vec![d(0), d(1)], vec![d(2), d(0)]]).is_err());
        assert!(Metric::from_matrix(vec![vec![d(1)]]).is_err());
    }
}
