//! Randomized geometric invariants, shared by the property tests and the
//! acceptance run.

use std::cell::Cell;
use std::f64::consts::TAU;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use watchman::geometry::{reaching_path, Direction};
use watchman::offline::{ofp, osp, reflection_path};
use watchman::{ConvexPolygon, Point};

use super::{random_polygon, random_start, rng};

pub const CASES: u32 = 500;

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

/// A polygon with 3..=12 vertices and `k` start points, from one seed.
fn instance(seed: u64, k: usize) -> (ConvexPolygon, Vec<Point>) {
    let mut r = rng(seed);
    let n = 3 + (seed % 10) as usize;
    let poly = random_polygon(&mut r, n);
    let pts = (0..k).map(|_| random_start(&mut r, &poly, 3.0)).collect();
    (poly, pts)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

pub fn visibility_symmetry(cases: u32) -> Result<(), String> {
    run(cases, any::<u64>(), |seed| {
        let (poly, p) = instance(seed, 2);
        let ab = poly.visible(p[0], p[1]).unwrap();
        let ba = poly.visible(p[1], p[0]).unwrap();
        prop_assert_eq!(ab, ba);
        Ok(())
    })
}

/// The inner vertices of a reaching path are obstacle vertices and the
/// path bends the same way at each of them.
pub fn reaching_chain_convexity(cases: u32) -> Result<(), String> {
    run(cases, (any::<u64>(), any::<bool>()), |(seed, ccw)| {
        let (poly, p) = instance(seed, 2);
        let dir = if ccw { Direction::Ccw } else { Direction::Cw };
        let path = reaching_path(p[0], p[1], &poly, dir).unwrap();
        prop_assert!(path.avoids(&poly));
        let pts = path.points();
        for q in &pts[1..pts.len() - 1] {
            prop_assert!(poly.vertices().iter().any(|v| v.dist(*q) < 1e-12), "inner point {:?} is not a vertex", q);
        }
        let turns: Vec<f64> = pts.windows(3).map(|w| (w[1] - w[0]).cross(w[2] - w[1])).collect();
        let tol = 1e-12 * poly.diagonal().powi(2);
        prop_assert!(turns.iter().all(|&t| t >= -tol) || turns.iter().all(|&t| t <= tol), "turns {:?}", turns);
        Ok(())
    })
}

pub fn rigid_motion_invariance(cases: u32) -> Result<(), String> {
    run(cases, (any::<u64>(), 0.0..TAU, -50.0..50.0f64, -50.0..50.0f64), |(seed, theta, tx, ty)| {
        let (poly, p) = instance(seed, 1);
        let t = Point::new(tx, ty);
        let moved = poly.map(|q| q.rotate(theta) + t).unwrap();
        let a = osp(p[0], &poly).unwrap().length();
        let b = osp(p[0].rotate(theta) + t, &moved).unwrap().length();
        prop_assert!(close(a, b, 1e-9), "osp {} vs {}", a, b);
        let (fa, fb) = (ofp(&poly).length(), ofp(&moved).length());
        prop_assert!(close(fa, fb, 1e-9), "ofp {} vs {}", fa, fb);
        Ok(())
    })
}

pub fn scaling_homogeneity(cases: u32) -> Result<(), String> {
    run(cases, (any::<u64>(), -2.0..2.0f64), |(seed, log_scale)| {
        let (poly, p) = instance(seed, 1);
        let k = 10f64.powf(log_scale);
        let scaled = poly.map(|q| q * k).unwrap();
        let a = osp(p[0], &poly).unwrap().length();
        let b = osp(p[0] * k, &scaled).unwrap().length();
        prop_assert!(close(a * k, b, 1e-9), "osp {} * {} vs {}", a, k, b);
        prop_assert!(close(ofp(&poly).length() * k, ofp(&scaled).length(), 1e-9));
        Ok(())
    })
}

/// Every feasible reflection path has equal incidence and reflection
/// angles. Returns the number of feasible paths checked.
pub fn reflection_law(cases: u32) -> Result<usize, String> {
    let checked = Cell::new(0usize);
    run(cases, any::<u64>(), |seed| {
        let (poly, p) = instance(seed, 1);
        let n = poly.len();
        for i in 0..n {
            for j in 0..n {
                if let Ok(r) = reflection_path(p[0], i, j, &poly) {
                    prop_assert!(
                        (r.incidence_angle - r.reflection_angle).abs() <= 1e-6,
                        "edges ({}, {}): {} vs {}",
                        i,
                        j,
                        r.incidence_angle,
                        r.reflection_angle
                    );
                    checked.set(checked.get() + 1);
                }
            }
        }
        Ok(())
    })?;
    Ok(checked.get())
}

pub fn ofp_below_osp(cases: u32) -> Result<(), String> {
    run(cases, any::<u64>(), |seed| {
        let (poly, p) = instance(seed, 1);
        let free = ofp(&poly).length();
        let fixed = osp(p[0], &poly).unwrap().length();
        prop_assert!(free <= fixed * (1.0 + 1e-9), "ofp {} > osp {}", free, fixed);
        Ok(())
    })
}
