#![allow(dead_code)]

use std::collections::BTreeSet;

use cuspcert_core::lattice::Unimodular;
use cuspcert_core::{Lattice, Slope, Vec2};
use rand::rngs::StdRng;
use rand::Rng;

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    (a, b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Every primitive (p, q) with |p·v1 + q·v2| < bound, found by scanning the
/// box |q| ≤ bound·|v1|/area, |p| ≤ bound·|v2|/area in the given basis.
pub fn brute_force_short_slopes(l: &Lattice, bound: f64) -> BTreeSet<Slope> {
    let (v1, v2) = (l.v1(), l.v2());
    let area = v1.cross(v2).abs();
    let pmax = (bound * v2.norm() / area).ceil() as i64 + 1;
    let qmax = (bound * v1.norm() / area).ceil() as i64 + 1;
    let mut out = BTreeSet::new();
    for p in -pmax..=pmax {
        for q in -qmax..=qmax {
            if gcd(p, q) != 1 {
                continue;
            }
            let x = p as f64 * v1.x + q as f64 * v2.x;
            let y = p as f64 * v1.y + q as f64 * v2.y;
            if x.hypot(y) < bound {
                out.insert(Slope::new(p, q).unwrap());
            }
        }
    }
    out
}

/// A lattice with a random, possibly skewed basis and area in a moderate range.
pub fn random_lattice(rng: &mut StdRng) -> Lattice {
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    let len = rng.gen_range(0.5..8.0);
    let v1 = Vec2::new(len * angle.cos(), len * angle.sin());
    let shear = rng.gen_range(-2.5..2.5);
    let height = rng.gen_range(0.4..6.0);
    let (ux, uy) = (angle.cos(), angle.sin());
    let v2 = Vec2::new(shear * len * ux - height * uy, shear * len * uy + height * ux);
    Lattice::new(v1, v2).unwrap()
}

pub fn random_slope(rng: &mut StdRng, range: i64) -> Slope {
    loop {
        let p = rng.gen_range(-range..=range);
        let q = rng.gen_range(-range..=range);
        if gcd(p, q) == 1 {
            return Slope::new(p, q).unwrap();
        }
    }
}

/// Product of random elementary matrices and sign flips.
pub fn random_unimodular(rng: &mut StdRng) -> Unimodular {
    let mut u = Unimodular::IDENTITY;
    for _ in 0..rng.gen_range(1..6) {
        let k = rng.gen_range(-3..=3);
        let e = match rng.gen_range(0..4) {
            0 => Unimodular::new(1, k, 0, 1),
            1 => Unimodular::new(1, 0, k, 1),
            2 => Unimodular::new(0, 1, 1, 0),
            _ => Unimodular::new(-1, 0, 0, 1),
        }
        .unwrap();
        u = u.compose(&e);
    }
    u
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}
