//! Instance families on which the LP relaxation is weak, and a checker for
//! the flow-strengthened relaxation.
//!
//! Every generated metric takes few distinct values (intra-group distances
//! 1 and 2, a large separation between groups), so it is built directly
//! from distance levels.

pub mod flow;

use crate::dist::{Dist, Rational};
use crate::error::{invalid_arg, Result};
use crate::model::{Instance, Metric};

pub use flow::{build_flow_lp, check_certificate, FlowCertificate, FlowCheck, FlowNetworkLp};

/// Builds a metric on points split into groups: distance 0 to itself,
/// `near(i, j)` (1 or 2) inside a group, `far` across groups.
fn grouped_metric(group: &[usize], near: impl Fn(usize, usize) -> u32, far: Dist) -> Metric {
    let n = group.len();
    let levels = vec![Dist::zero(), Dist::from_integer(1), Dist::from_integer(2), far];
    let mut rank = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            rank[i * n + j] = if i == j {
                0
            } else if group[i] == group[j] {
                near(i, j)
            } else {
                3
            };
        }
    }
    Metric::from_levels(n, levels, rank)
}

/// Values turned into an instance with a radius-one solution exactly when
/// some `k` of them sum to half their total. Group `i` is one red center
/// with `A + a_i - 1` more red and `A - a_i` blue points at distance 1 from
/// it and 2 from each other; groups are `10 (k + 1)` apart. Requirements
/// are `kA + A/2` red and `kA - A/2` blue. Values are doubled when their
/// total is odd. Needs `1 <= k < values.len()`.
pub fn subset_sum_instance(values: &[u64], k: usize) -> Result<Instance> {
    if values.is_empty() || values.contains(&0) {
        return Err(invalid_arg!("values must be positive and nonempty"));
    }
    if k == 0 || k >= values.len() {
        return Err(invalid_arg!("k must lie in 1..{}, got {k}", values.len()));
    }
    let mut values = values.to_vec();
    if values.iter().sum::<u64>() % 2 == 1 {
        values.iter_mut().for_each(|v| *v *= 2);
    }
    let total: u64 = values.iter().sum();
    let mut group = Vec::new();
    let mut labels = Vec::new();
    let mut is_center = Vec::new();
    for (g, &a) in values.iter().enumerate() {
        let red = (total + a) as usize;
        let blue = (total - a) as usize;
        for p in 0..red + blue {
            group.push(g);
            labels.push(if p < red { 1 } else { 2 });
            is_center.push(p == 0);
        }
    }
    let far = Dist::from_integer(10 * (k as u64 + 1));
    let metric = grouped_metric(&group, |i, j| if is_center[i] || is_center[j] { 1 } else { 2 }, far);
    let (kk, half) = (k as u64 * total, total / 2);
    Instance::new(metric, &labels, k, vec![(kk + half) as usize, (kk - half) as usize])
}

/// Half of the total after the parity doubling of [`subset_sum_instance`],
/// and the doubled values.
pub fn subset_sum_target(values: &[u64]) -> (Vec<u64>, u64) {
    let mut values = values.to_vec();
    if values.iter().sum::<u64>() % 2 == 1 {
        values.iter_mut().for_each(|v| *v *= 2);
    }
    let half = values.iter().sum::<u64>() / 2;
    (values, half)
}

/// `2n` groups of four points, `n` odd: odd-numbered groups have three red
/// and one blue point, even-numbered ones the reverse. Points in a group
/// are at distance 1, groups at distance `far`. `k = n`, both requirements
/// `2n`. LP1 is feasible at radius 1, while every integral solution needs
/// radius `far`.
pub fn sos_gap_instance(n: usize, far: &Rational) -> Result<Instance> {
    if n.is_multiple_of(2) {
        return Err(invalid_arg!("group parameter must be odd, got {n}"));
    }
    if *far <= Rational::from_integer(2.into()) {
        return Err(invalid_arg!("separation must exceed 2, got {far}"));
    }
    let mut group = Vec::new();
    let mut labels = Vec::new();
    for g in 0..2 * n {
        let red = if g % 2 == 0 { 3 } else { 1 };
        for p in 0..4 {
            group.push(g);
            labels.push(if p < red { 1 } else { 2 });
        }
    }
    let metric = grouped_metric(&group, |_, _| 1, Dist::from_rational(far.clone())?);
    Instance::new(metric, &labels, n, vec![2 * n, 2 * n])
}

/// The flow-gap instance with its six designated centers and the
/// half-integral certificate; see [`flow::flow_gap`].
pub fn flow_gap_instance(far: &Rational) -> Result<(Instance, [usize; 6], FlowCertificate)> {
    flow::flow_gap(far)
}
