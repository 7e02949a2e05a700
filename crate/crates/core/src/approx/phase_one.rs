//! Guessed centers and the flowers that absorb their neighborhoods.

use serde::Serialize;

use crate::error::{invalid_arg, Result};
use crate::model::{Class, Instance, Neighborhoods, PointSet, RED};

/// Points of `class` that the flower at `q` adds to the ball at `p`,
/// inside `within`. Requires `q ∈ B(p)`.
pub fn gain_of(
    inst: &Instance,
    nb: &Neighborhoods,
    p: usize,
    q: usize,
    within: &PointSet,
    class: Class,
) -> Result<PointSet> {
    inst.check_point(p)?;
    inst.check_point(q)?;
    if !nb.ball(p).contains(q) {
        return Err(invalid_arg!("point {q} is not in the ball around {p}"));
    }
    let mut g = nb.flower(q).clone();
    g.difference_with(nb.ball(p));
    g.intersect_with(inst.class(class));
    g.intersect_with(within);
    Ok(g)
}

/// Red points the flower at `q` adds to the ball at `p`, inside `within`.
pub fn gain(inst: &Instance, nb: &Neighborhoods, p: usize, q: usize, within: &PointSet) -> Result<PointSet> {
    gain_of(inst, nb, p, q, within, RED)
}

/// The `q ∈ B(c) ∩ within` of largest gain (lowest index on ties) and its gain size.
pub(crate) fn best_flower(
    inst: &Instance,
    nb: &Neighborhoods,
    c: usize,
    within: &PointSet,
    class: Class,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for q in nb.ball(c).intersection(within) {
        let mut g = nb.flower(q).clone();
        g.difference_with(nb.ball(c));
        g.intersect_with(inst.class(class));
        let size = g.intersection_count(within);
        if best.is_none_or(|(_, s)| size > s) {
            best = Some((q, size));
        }
    }
    best
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseOneResult {
    pub guesses: [usize; 3],
    /// `None` when the guessed ball has no point left in its nested set.
    pub flowers: [Option<usize>; 3],
    /// The nested sets, outermost (all points) first; four entries.
    #[serde(skip)]
    pub nested: Vec<PointSet>,
    /// Union of the guessed balls.
    #[serde(skip)]
    pub guessed: PointSet,
    /// Per-class counts of `guessed`.
    pub guessed_counts: Vec<usize>,
    pub tau: usize,
}

impl PhaseOneResult {
    /// Points left after removing the three flowers.
    pub fn remaining(&self) -> &PointSet {
        &self.nested[3]
    }

    /// Distinct flower centers, ascending.
    pub fn opened(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.flowers.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// For each guess in order, the flower center in its ball maximizing the
/// red gain inside the current nested set; each flower is then removed.
pub fn phase_one(inst: &Instance, nb: &Neighborhoods, guesses: [usize; 3]) -> Result<PhaseOneResult> {
    for &c in &guesses {
        inst.check_point(c)?;
    }
    let mut nested = vec![inst.all_points()];
    let mut flowers = [None; 3];
    let mut gains = [0usize; 3];
    let mut guessed = inst.empty_set();
    for (i, &c) in guesses.iter().enumerate() {
        guessed.union_with(nb.ball(c));
        let mut next = nested[i].clone();
        if let Some((q, size)) = best_flower(inst, nb, c, &nested[i], RED) {
            flowers[i] = Some(q);
            gains[i] = size;
            next.difference_with(nb.flower(q));
        }
        nested.push(next);
    }
    let guessed_counts = inst.class_counts(&guessed);
    Ok(PhaseOneResult { guesses, flowers, nested, guessed, guessed_counts, tau: gains[2] })
}
