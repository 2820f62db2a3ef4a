#![allow(dead_code)]

pub mod oracle;
pub mod properties;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use watchman::{ConvexPolygon, Point};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_square() -> ConvexPolygon {
    ConvexPolygon::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)])
        .unwrap()
}

/// Convex n-gon with vertices at sorted random angles on a random ellipse.
pub fn random_polygon(rng: &mut impl Rng, n: usize) -> ConvexPolygon {
    loop {
        let mut ang: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        ang.sort_by(f64::total_cmp);
        let gaps_ok = (0..n).all(|k| {
            let next = if k + 1 < n { ang[k + 1] } else { ang[0] + std::f64::consts::TAU };
            next - ang[k] > 0.15
        });
        if !gaps_ok {
            continue;
        }
        let (a, b) = (rng.gen_range(0.6..1.4), rng.gen_range(0.6..1.4));
        let rot = rng.gen_range(0.0..std::f64::consts::TAU);
        let c = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let pts = ang.iter().map(|&t| c + Point::new(a * t.cos(), b * t.sin()).rotate(rot)).collect();
        if let Ok(p) = ConvexPolygon::new(pts) {
            return p;
        }
    }
}

/// A start point in the annulus between 1.1 and `outer` circumradii.
pub fn random_start(rng: &mut impl Rng, poly: &ConvexPolygon, outer: f64) -> Point {
    let c = poly.centroid();
    let r = poly.circumradius();
    loop {
        let t = rng.gen_range(0.0..std::f64::consts::TAU);
        let d = r * rng.gen_range(1.1..outer);
        let p = c + Point::new(t.cos(), t.sin()) * d;
        if !poly.contains_interior(p) {
            return p;
        }
    }
}
