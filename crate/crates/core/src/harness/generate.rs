//! Instance generation.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point, MAX_VERTICES};

const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub polygon: ConvexPolygon,
    pub start: Point,
    pub label: String,
    pub seed: Option<u64>,
}

impl Instance {
    pub fn new(polygon: ConvexPolygon, start: Point, label: impl Into<String>, seed: Option<u64>) -> Result<Self> {
        polygon.check_outside(start)?;
        Ok(Self { polygon, start, label: label.into(), seed })
    }
}

/// Random convex n-gon: the hull of radially jittered points on a random ellipse,
/// resampled until every point is a hull vertex. Deterministic in `seed`.
pub fn gen_random_convex(n: usize, seed: u64, radius: f64) -> Result<ConvexPolygon> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    if n > MAX_VERTICES {
        return Err(Error::InvalidDims(format!("at most {MAX_VERTICES} vertices supported, got {n}")));
    }
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidDims(format!("radius must be positive, got {radius}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let aspect = rng.gen_range(0.5..1.0);
        let rot = rng.gen_range(0.0..TAU);
        let slot = TAU / n as f64;
        // radial jitter below the sagitta of one slot keeps most draws convex
        let jitter = 0.25 * (1.0 - (0.5 * slot).cos());
        let pts: Vec<Point> = (0..n)
            .map(|k| {
                let t = (k as f64 + rng.gen_range(0.15..0.85)) * slot;
                let r = radius * (1.0 + rng.gen_range(-jitter..jitter));
                Point::new(r * t.cos(), r * aspect * t.sin()).rotate(rot)
            })
            .collect();
        if crate::online::knowledge::convex_hull(pts.clone()).len() != n {
            continue;
        }
        if let Ok(poly) = ConvexPolygon::new(pts) {
            return Ok(poly);
        }
    }
    Err(Error::GenerationFailure(MAX_ATTEMPTS))
}

/// Uniform start in the annulus `[inner, outer]` times the circumradius
/// around the centroid, rejecting points inside the obstacle.
pub fn random_start(poly: &ConvexPolygon, rng: &mut impl Rng, inner: f64, outer: f64) -> Point {
    let c = poly.centroid();
    let r = poly.circumradius();
    loop {
        let t = rng.gen_range(0.0..TAU);
        // area-uniform radius
        let u: f64 = rng.gen_range((inner * inner)..(outer * outer));
        let p = c + Point::new(t.cos(), t.sin()) * (r * u.sqrt());
        if !poly.contains_interior(p) {
            return p;
        }
    }
}

/// Isosceles triangle with legs of length `ell` and base `eps`, apex at the
/// origin and one leg along the positive x-axis. The start sits below the
/// midpoint of that leg at distance `eps / 10`.
pub fn gen_thin_triangle(ell: f64, eps: f64) -> Result<Instance> {
    if !(ell > 0.0 && eps > 0.0 && eps < ell) || !ell.is_finite() {
        return Err(Error::InvalidDims(format!("need 0 < eps < ell, got ell={ell}, eps={eps}")));
    }
    let phi = 2.0 * (eps / (2.0 * ell)).asin();
    let poly = ConvexPolygon::new(vec![
        Point::new(0.0, 0.0),
        Point::new(ell, 0.0),
        Point::new(ell * phi.cos(), ell * phi.sin()),
    ])?;
    Instance::new(poly, Point::new(ell / 2.0, -eps / 10.0), "thin", None)
}
