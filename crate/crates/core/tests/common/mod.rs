#![allow(dead_code)]

use ckc::dist::{Dist, Rational};
use ckc::model::{ball, radius_candidates, Instance};
use num_traits::{One, Zero};
use rand::Rng;

/// Integer points in `[0, side]^2`, `omega` classes, random requirements.
pub fn random_instance(rng: &mut impl Rng, max_n: usize, max_k: usize, omega: usize, side: i64) -> Instance {
    let n = rng.gen_range(omega..=max_n);
    let k = rng.gen_range(1..=max_k).min(n);
    let coords: Vec<[i64; 2]> = (0..n).map(|_| [rng.gen_range(0..=side), rng.gen_range(0..=side)]).collect();
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=omega)).collect();
    let req = (1..=omega)
        .map(|c| {
            let size = labels.iter().filter(|&&l| l == c).count();
            rng.gen_range(0..=size)
        })
        .collect();
    Instance::from_coords(coords, &labels, k, req).unwrap()
}

/// Points drawn around a few random centers.
pub fn clustered_instance(rng: &mut impl Rng, n: usize, k: usize, omega: usize) -> Instance {
    let groups = rng.gen_range(2..=6);
    let centers: Vec<[i64; 2]> = (0..groups).map(|_| [rng.gen_range(0..=60), rng.gen_range(0..=60)]).collect();
    let coords: Vec<[i64; 2]> = (0..n)
        .map(|_| {
            let c = centers[rng.gen_range(0..groups)];
            [c[0] + rng.gen_range(-8..=8), c[1] + rng.gen_range(-8..=8)]
        })
        .collect();
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=omega)).collect();
    let req = (1..=omega)
        .map(|c| rng.gen_range(0..=labels.iter().filter(|&&l| l == c).count()))
        .collect();
    Instance::from_coords(coords, &labels, k.min(n).max(1), req).unwrap()
}

/// A random candidate radius of `inst`.
pub fn random_radius(rng: &mut impl Rng, inst: &Instance) -> Dist {
    let radii = radius_candidates(inst);
    radii.as_slice()[rng.gen_range(0..radii.len())].clone()
}

/// No ball of three times `rho` contains the balls of two of `centers`.
pub fn well_separated(inst: &Instance, centers: &[usize], rho: &Dist) -> bool {
    let wide = rho.scaled(3);
    let wide_balls: Vec<_> = (0..inst.n()).map(|p| ball(inst, p, &wide).unwrap()).collect();
    for a in 0..centers.len() {
        for b in a + 1..centers.len() {
            let mut u = ball(inst, centers[a], rho).unwrap();
            u.union_with(&ball(inst, centers[b], rho).unwrap());
            if wide_balls.iter().any(|w| u.is_subset(w)) {
                return false;
            }
        }
    }
    true
}

pub fn is_fractional(v: &Rational) -> bool {
    !v.is_zero() && !v.is_one()
}

/// Brute-force coverage: class counts of points within `radius` of a center.
pub fn recount(inst: &Instance, centers: &[usize], radius: &Dist) -> Vec<usize> {
    let mut counts = vec![0; inst.omega()];
    for p in 0..inst.n() {
        if centers.iter().any(|&c| inst.dist(p, c) <= radius) {
            counts[inst.color(p)] += 1;
        }
    }
    counts
}
