//! Group knapsack over dense groups: pick at most one center per group so
//! that the picked count and per-class coverage hit an exact target.

use crate::model::{Instance, Neighborhoods};

use super::dense::DenseDecomposition;

/// A candidate center with its coverage inside its group's removed region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpItem {
    pub point: usize,
    pub cover: Vec<usize>,
}

const UNREACHABLE: u32 = 0;
const SKIP: u32 = 1;

/// Reachability table `T[m', cover, k']` with backpointers.
///
/// `T[m', cover, k']` holds when `k'` items, at most one from each of the
/// first `m'` groups, have coverage vectors summing to `cover`.
#[derive(Clone, Debug)]
pub struct DpTable {
    groups: Vec<Vec<DpItem>>,
    caps: Vec<usize>,
    max_count: usize,
    /// Cells per layer.
    layer: usize,
    choice: Vec<u32>,
}

impl DpTable {
    /// `caps[c]` bounds class-`c` coverage; `max_count` bounds the item count.
    pub fn new(groups: Vec<Vec<DpItem>>, caps: Vec<usize>, max_count: usize) -> Self {
        let cover_cells: usize = caps.iter().map(|c| c + 1).product();
        let layer = cover_cells * (max_count + 1);
        let m = groups.len();
        let mut table = DpTable { groups, caps, max_count, layer, choice: vec![UNREACHABLE; (m + 1) * layer] };
        table.choice[0] = SKIP;
        let mut cover = vec![0usize; table.caps.len()];
        for g in 1..=m {
            for cell in 0..cover_cells {
                table.decode(cell, &mut cover);
                for k in 0..=max_count {
                    let here = cell * (max_count + 1) + k;
                    if table.choice[(g - 1) * layer + here] != UNREACHABLE {
                        table.choice[g * layer + here] = SKIP;
                        continue;
                    }
                    if k == 0 {
                        continue;
                    }
                    let found = table.groups[g - 1].iter().position(|item| {
                        item.cover.iter().zip(&cover).all(|(a, b)| a <= b) && {
                            let prev = table.encode_minus(&cover, &item.cover);
                            table.choice[(g - 1) * layer + prev * (max_count + 1) + k - 1] != UNREACHABLE
                        }
                    });
                    if let Some(t) = found {
                        table.choice[g * layer + here] = 2 + t as u32;
                    }
                }
            }
        }
        table
    }

    /// Items from a dense decomposition, groups in removal order. Each
    /// member `p` of a group becomes an item covering `B(p) ∩ D`.
    pub fn from_decomposition(inst: &Instance, nb: &Neighborhoods, dec: &DenseDecomposition, max_count: usize) -> Self {
        let groups = dec
            .steps
            .iter()
            .map(|step| {
                step.members
                    .ones()
                    .map(|p| DpItem { point: p, cover: inst.class_counts(&nb.ball_in(p, &step.removed)) })
                    .collect()
            })
            .collect();
        let caps = inst.class_counts(&dec.dense);
        let max_count = max_count.min(dec.steps.len());
        DpTable::new(groups, caps, max_count)
    }

    pub fn groups(&self) -> &[Vec<DpItem>] {
        &self.groups
    }

    pub fn max_count(&self) -> usize {
        self.max_count
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    fn decode(&self, mut cell: usize, out: &mut [usize]) {
        for (c, cap) in self.caps.iter().enumerate() {
            out[c] = cell % (cap + 1);
            cell /= cap + 1;
        }
    }

    fn encode(&self, cover: &[usize]) -> Option<usize> {
        let mut cell = 0;
        for (c, cap) in self.caps.iter().enumerate().rev() {
            let v = *cover.get(c).unwrap_or(&0);
            if v > *cap {
                return None;
            }
            cell = cell * (cap + 1) + v;
        }
        if cover.len() > self.caps.len() && cover[self.caps.len()..].iter().any(|&v| v != 0) {
            return None;
        }
        Some(cell)
    }

    fn encode_minus(&self, cover: &[usize], minus: &[usize]) -> usize {
        let diff: Vec<usize> = cover.iter().zip(minus).map(|(a, b)| a - b).collect();
        self.encode(&diff).expect("difference stays inside the table")
    }

    fn index(&self, groups: usize, cover: &[usize], count: usize) -> Option<usize> {
        if groups > self.groups.len() || count > self.max_count {
            return None;
        }
        let cell = self.encode(cover)?;
        Some(groups * self.layer + cell * (self.max_count + 1) + count)
    }

    /// `T[groups, cover, count]`; out-of-range cells are false.
    pub fn get(&self, groups: usize, cover: &[usize], count: usize) -> bool {
        self.index(groups, cover, count).is_some_and(|i| self.choice[i] != UNREACHABLE)
    }

    /// Coverage vectors reachable with exactly `count` items over all groups.
    pub fn reachable(&self, count: usize) -> Vec<Vec<usize>> {
        if count > self.max_count {
            return Vec::new();
        }
        let m = self.groups.len();
        let cover_cells = self.layer / (self.max_count + 1);
        let mut cover = vec![0; self.caps.len()];
        let mut out = Vec::new();
        for cell in 0..cover_cells {
            if self.choice[m * self.layer + cell * (self.max_count + 1) + count] != UNREACHABLE {
                self.decode(cell, &mut cover);
                out.push(cover.clone());
            }
        }
        out.sort();
        out
    }

    /// Reachable coverage vectors for `count` items that no other reachable
    /// vector dominates componentwise, in ascending lexicographic order.
    pub fn frontier(&self, count: usize) -> Vec<Vec<usize>> {
        let all = self.reachable(count);
        all.iter()
            .filter(|a| !all.iter().any(|b| b != *a && b.iter().zip(a.iter()).all(|(x, y)| x >= y)))
            .cloned()
            .collect()
    }

    /// Centers realizing `T[m, cover, count]`, one per used group.
    pub fn reconstruct(&self, cover: &[usize], count: usize) -> Option<Vec<usize>> {
        let m = self.groups.len();
        if !self.get(m, cover, count) {
            return None;
        }
        let mut cover: Vec<usize> = (0..self.caps.len()).map(|c| *cover.get(c).unwrap_or(&0)).collect();
        let mut count = count;
        let mut out = Vec::new();
        for g in (1..=m).rev() {
            let code = self.choice[self.index(g, &cover, count).expect("cell in range")];
            if code == SKIP {
                continue;
            }
            let item = &self.groups[g - 1][(code - 2) as usize];
            out.push(item.point);
            for (c, v) in item.cover.iter().enumerate() {
                cover[c] -= v;
            }
            count -= 1;
        }
        out.reverse();
        Some(out)
    }
}
