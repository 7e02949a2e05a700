//! LP1 strengthened by a knapsack flow network.
//!
//! Items are processed in a fixed order. A node `(w, x, y, z)` means: the
//! first `w` items have been decided, the taken ones cover `x` blue and `y`
//! red points (capped at `n`) with `z` balls. Skipping item `w` follows an
//! `e` edge, taking it an `f` edge; `g` edges lead from the last level to
//! the sink when both requirements are met with exactly `k` balls. The
//! flow through an item's `f` edges equals its opening `x`, the flow
//! through its `e` edges `1 - x`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dist::{format_rational, parse_rational, Dist, Rational};
use crate::error::{invalid_arg, Error, Result};
use crate::lp::{Row, Sense};
use crate::model::{Instance, Metric, Neighborhoods, BLUE, RED};

/// The flow-strengthened LP with named variables and rows. Every variable lies in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct FlowNetworkLp {
    pub points: usize,
    pub items: Vec<usize>,
    pub var_names: Vec<String>,
    pub rows: Vec<Row>,
    pub row_names: Vec<String>,
    index: HashMap<String, usize>,
}

impl FlowNetworkLp {
    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn add_var(&mut self, name: String) -> usize {
        let id = self.var_names.len();
        self.index.insert(name.clone(), id);
        self.var_names.push(name);
        id
    }

    fn add_row(&mut self, name: String, coeffs: Vec<(usize, Rational)>, sense: Sense, rhs: Rational) {
        self.rows.push(Row::new(coeffs, sense, rhs));
        self.row_names.push(name);
    }
}

fn node_name(w: usize, x: usize, y: usize, z: usize) -> String {
    format!("{w},{x},{y},{z}")
}

pub fn x_name(i: usize) -> String {
    format!("x[{i}]")
}

pub fn z_name(i: usize) -> String {
    format!("z[{i}]")
}

pub fn skip_name(w: usize, x: usize, y: usize, z: usize) -> String {
    format!("e[{}]", node_name(w, x, y, z))
}

pub fn take_name(w: usize, x: usize, y: usize, z: usize) -> String {
    format!("f[{}]", node_name(w, x, y, z))
}

pub fn sink_name(x: usize, y: usize) -> String {
    format!("g[{x},{y}]")
}

/// LP1 at `radius` plus the flow network over `items` (in that order),
/// unit capacities, flow coupling rows, and `x = 0` rows for points that
/// are not items. Needs exactly two classes.
pub fn build_flow_lp(inst: &Instance, items: &[usize], radius: &Dist) -> Result<FlowNetworkLp> {
    if inst.omega() != 2 {
        return Err(invalid_arg!("the flow network needs two classes, got {}", inst.omega()));
    }
    let n = inst.n();
    let k = inst.k();
    let mut seen = vec![false; n];
    for &i in items {
        inst.check_point(i)?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(invalid_arg!("item {i} listed twice"));
        }
    }
    let nb = Neighborhoods::new(inst, radius);
    let one = Rational::one;
    let num = |v: usize| Rational::from_integer(v.into());
    let mut lp = FlowNetworkLp {
        points: n,
        items: items.to_vec(),
        var_names: Vec::new(),
        rows: Vec::new(),
        row_names: Vec::new(),
        index: HashMap::new(),
    };

    let xs: Vec<usize> = (0..n).map(|i| lp.add_var(x_name(i))).collect();
    let zs: Vec<usize> = (0..n).map(|i| lp.add_var(z_name(i))).collect();
    for j in 0..n {
        let mut row: Vec<(usize, Rational)> = nb.ball(j).ones().map(|i| (xs[i], one())).collect();
        row.push((zs[j], -one()));
        lp.add_row(format!("cover[{j}]"), row, Sense::Ge, Rational::zero());
    }
    lp.add_row("budget".into(), xs.iter().map(|&v| (v, one())).collect(), Sense::Le, num(k));
    for (c, name) in [(RED, "red"), (BLUE, "blue")] {
        let row = inst.class(c).ones().map(|j| (zs[j], one())).collect();
        lp.add_row(format!("requirement[{name}]"), row, Sense::Ge, num(inst.req()[c]));
    }
    for i in (0..n).filter(|&i| !seen[i]) {
        lp.add_row(format!("not_an_item[{i}]"), vec![(xs[i], one())], Sense::Eq, Rational::zero());
    }

    // flow variables, with the edges entering and leaving each node
    let m = items.len();
    let mut inflow: BTreeMap<(usize, usize, usize, usize), Vec<usize>> = BTreeMap::new();
    let mut outflow: BTreeMap<(usize, usize, usize, usize), Vec<usize>> = BTreeMap::new();
    for (w, &item) in items.iter().enumerate() {
        let counts = inst.class_counts(nb.ball(item));
        let (b_i, r_i) = (counts[BLUE], counts[RED]);
        let mut takes = Vec::new();
        let mut skips = Vec::new();
        for x in 0..=n {
            for y in 0..=n {
                for z in 0..=k {
                    let e = lp.add_var(skip_name(w, x, y, z));
                    outflow.entry((w, x, y, z)).or_default().push(e);
                    inflow.entry((w + 1, x, y, z)).or_default().push(e);
                    skips.push(e);
                    if z < k {
                        let f = lp.add_var(take_name(w, x, y, z));
                        outflow.entry((w, x, y, z)).or_default().push(f);
                        inflow.entry((w + 1, (x + b_i).min(n), (y + r_i).min(n), z + 1)).or_default().push(f);
                        takes.push(f);
                    }
                }
            }
        }
        let mut row: Vec<(usize, Rational)> = takes.iter().map(|&f| (f, one())).collect();
        row.push((xs[item], -one()));
        lp.add_row(format!("take[{item}]"), row, Sense::Eq, Rational::zero());
        let mut row: Vec<(usize, Rational)> = skips.iter().map(|&e| (e, one())).collect();
        row.push((xs[item], one()));
        lp.add_row(format!("skip[{item}]"), row, Sense::Eq, one());
    }
    let mut sinks = Vec::new();
    for x in inst.req()[BLUE]..=n {
        for y in inst.req()[RED]..=n {
            let g = lp.add_var(sink_name(x, y));
            outflow.entry((m, x, y, k)).or_default().push(g);
            sinks.push(g);
        }
    }

    let source = (0, 0, 0, 0);
    let out_of_source = outflow.get(&source).cloned().unwrap_or_default();
    lp.add_row("source".into(), out_of_source.iter().map(|&v| (v, one())).collect(), Sense::Eq, one());
    lp.add_row("sink".into(), sinks.iter().map(|&v| (v, one())).collect(), Sense::Eq, one());
    let mut nodes: Vec<_> = inflow.keys().chain(outflow.keys()).copied().collect();
    nodes.sort_unstable();
    nodes.dedup();
    for node in nodes {
        if node == source {
            continue;
        }
        let mut row: Vec<(usize, Rational)> = Vec::new();
        row.extend(inflow.get(&node).into_iter().flatten().map(|&v| (v, one())));
        row.extend(outflow.get(&node).into_iter().flatten().map(|&v| (v, -one())));
        let (w, x, y, z) = node;
        lp.add_row(format!("conserve[{}]", node_name(w, x, y, z)), row, Sense::Eq, Rational::zero());
    }
    Ok(lp)
}

/// Result of checking an assignment against the flow LP.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowCheck {
    pub ok: bool,
    /// Names of violated rows, and `bounds[var]` for values outside `[0, 1]`.
    pub violated: Vec<String>,
}

/// Evaluates every row of `lp` at `values`, exactly.
pub fn check_certificate(lp: &FlowNetworkLp, values: &[Rational]) -> Result<FlowCheck> {
    if values.len() != lp.num_vars() {
        return Err(invalid_arg!("assignment has {} values for {} variables", values.len(), lp.num_vars()));
    }
    let mut violated = Vec::new();
    for (name, v) in lp.var_names.iter().zip(values) {
        if *v < Rational::zero() || *v > Rational::one() {
            violated.push(format!("bounds[{name}]"));
        }
    }
    for (name, row) in lp.row_names.iter().zip(&lp.rows) {
        if !row.holds(values) {
            violated.push(name.clone());
        }
    }
    Ok(FlowCheck { ok: violated.is_empty(), violated })
}

/// A fractional point of the flow LP: LP1 values for every point and the nonzero
/// flow values; flows not listed are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowCertificate {
    pub radius: Dist,
    pub items: Vec<usize>,
    pub x: Vec<Rational>,
    pub z: Vec<Rational>,
    pub flows: BTreeMap<String, Rational>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    radius: Dist,
    items: Vec<usize>,
    x: Vec<String>,
    z: Vec<String>,
    flows: BTreeMap<String, String>,
}

impl Serialize for FlowCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            radius: self.radius.clone(),
            items: self.items.clone(),
            x: self.x.iter().map(format_rational).collect(),
            z: self.z.iter().map(format_rational).collect(),
            flows: self.flows.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlowCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CertificateJson::deserialize(d)?;
        let parse = |t: &String| parse_rational(t).map_err(D::Error::custom);
        Ok(FlowCertificate {
            radius: raw.radius,
            items: raw.items,
            x: raw.x.iter().map(parse).collect::<std::result::Result<_, _>>()?,
            z: raw.z.iter().map(parse).collect::<std::result::Result<_, _>>()?,
            flows: raw
                .flows
                .iter()
                .map(|(k, v)| Ok((k.clone(), parse(v)?)))
                .collect::<std::result::Result<_, D::Error>>()?,
        })
    }
}

impl FlowCertificate {
    /// The full assignment for `lp`. Fails when an LP1 value is missing or
    /// a flow names an unknown variable.
    pub fn assignment(&self, lp: &FlowNetworkLp) -> Result<Vec<Rational>> {
        let n = lp.points;
        if self.x.len() != n || self.z.len() != n {
            return Err(invalid_arg!("certificate must give x and z for every point"));
        }
        let mut values = vec![Rational::zero(); lp.num_vars()];
        for i in 0..n {
            values[lp.var(&x_name(i)).expect("checked above")] = self.x[i].clone();
            values[lp.var(&z_name(i)).expect("same count as x")] = self.z[i].clone();
        }
        for (name, v) in &self.flows {
            let id = lp.var(name).ok_or_else(|| Error::InvalidArgument(format!("unknown variable {name}")))?;
            values[id] = v.clone();
        }
        Ok(values)
    }

    /// Builds the network the certificate refers to and checks it.
    pub fn check(&self, inst: &Instance) -> Result<FlowCheck> {
        let lp = build_flow_lp(inst, &self.items, &self.radius)?;
        check_certificate(&lp, &self.assignment(&lp)?)
    }
}

// a ball pair has a left-only point, five shared points and a right-only point
const PAIR: usize = 7;
const SINGLE: usize = 4;

/// The 22-point instance: two overlapping ball pairs and two one-class
/// groups, `k = 3`, eight of each class required. Groups are `far` apart.
///
/// Top pair: each ball holds 2 red and 4 blue points and the two share
/// five. Bottom pair: the same with colors swapped. Then 4 red, then 4
/// blue. Opening each of the six designated balls by one half satisfies
/// LP1 and the flow rows (the top three and the bottom three each form a
/// path of flow one half), yet no three balls of radius 1 or 2 suffice.
pub fn flow_gap(far: &Rational) -> Result<(Instance, [usize; 6], FlowCertificate)> {
    if *far <= Rational::from_integer(10.into()) {
        return Err(invalid_arg!("separation must exceed 10, got {far}"));
    }
    let (r, b) = (1, 2);
    // offsets inside a pair: 0 left-only, 1..=5 shared, 6 right-only
    let pair_labels = |edge: usize, middle: usize| [edge, edge, middle, middle, middle, middle, edge];
    let mut labels = Vec::new();
    labels.extend(pair_labels(r, b));
    labels.extend(pair_labels(b, r));
    labels.extend([r; SINGLE]);
    labels.extend([b; SINGLE]);
    let group: Vec<usize> = (0..2 * PAIR + 2 * SINGLE)
        .map(|i| if i < 2 * PAIR { i / PAIR } else { 2 + (i - 2 * PAIR) / SINGLE })
        .collect();
    let n = group.len();
    // designated left and right centers of a pair sit at offsets 2 and 3
    let near = |i: usize, j: usize| -> u32 {
        if group[i] >= 2 {
            return 1;
        }
        let (a, c) = (i % PAIR, j % PAIR);
        let (lo, hi) = (a.min(c), a.max(c));
        match (lo, hi) {
            (0, 6) => 2,
            (0, 2) | (3, 6) => 1,
            (0, _) | (_, 6) => 2,
            _ => 1,
        }
    };
    let levels = vec![Dist::zero(), Dist::from_integer(1), Dist::from_integer(2), Dist::from_rational(far.clone())?];
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
    let metric = Metric::from_levels(n, levels, rank);
    let inst = Instance::new(metric, &labels, 3, vec![8, 8])?;
    let top = [2, 3, 2 * PAIR];
    let bottom = [PAIR + 2, PAIR + 3, 2 * PAIR + SINGLE];
    let designated = [top[0], top[1], top[2], bottom[0], bottom[1], bottom[2]];
    let cert = half_certificate(&inst, &designated, &[&top, &bottom])?;
    Ok((inst, designated, cert))
}

/// Opens every item by one half and routes one half unit of flow along
/// each path, where a path takes exactly the items in its set.
fn half_certificate(inst: &Instance, items: &[usize], paths: &[&[usize]]) -> Result<FlowCertificate> {
    let radius = Dist::from_integer(1);
    let nb = Neighborhoods::new(inst, &radius);
    let n = inst.n();
    let half = Rational::new(1.into(), 2.into());
    let mut x = vec![Rational::zero(); n];
    for &i in items {
        x[i] = half.clone();
    }
    let z = (0..n)
        .map(|j| nb.ball(j).ones().map(|i| x[i].clone()).sum::<Rational>().min(Rational::one()))
        .collect();
    let mut flows: BTreeMap<String, Rational> = BTreeMap::new();
    for path in paths {
        let (mut bx, mut ry, mut cz) = (0, 0, 0);
        for (w, item) in items.iter().enumerate() {
            let name = if path.contains(item) {
                let name = take_name(w, bx, ry, cz);
                let counts = inst.class_counts(nb.ball(*item));
                bx = (bx + counts[BLUE]).min(n);
                ry = (ry + counts[RED]).min(n);
                cz += 1;
                name
            } else {
                skip_name(w, bx, ry, cz)
            };
            *flows.entry(name).or_insert_with(Rational::zero) += &half;
        }
        *flows.entry(sink_name(bx, ry)).or_insert_with(Rational::zero) += &half;
    }
    Ok(FlowCertificate { radius, items: items.to_vec(), x, z, flows })
}
