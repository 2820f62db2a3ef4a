//! Watchman-route verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::{ConvexPolygon, Point, Polyline};

/// Number of sampled witnesses in the secondary check.
pub const SAMPLE_COUNT: usize = 2000;

/// Default coverage tolerance relative to the bounding-box diagonal.
pub const COVERAGE_TOL_SCALE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub ok: bool,
    /// Edges whose free half-plane the route never reaches.
    pub missed: Vec<usize>,
}

pub fn default_tolerance(poly: &ConvexPolygon) -> f64 {
    COVERAGE_TOL_SCALE * poly.diagonal()
}

/// Exact check that the route reaches every free half-plane within `tol`.
/// The signed distance to a line is affine along a segment, so its maximum
/// over the route is attained at a route vertex.
pub fn verify_watchman(route: &Polyline, poly: &ConvexPolygon, tol: f64) -> Coverage {
    let missed: Vec<usize> =
        (0..poly.len()).filter(|&i| !route.points().iter().any(|&p| poly.signed_distance(i, p) >= -tol)).collect();
    Coverage { ok: missed.is_empty(), missed }
}

/// Independent witness: samples points of the free space in a 3x expanded
/// bounding box and counts those that no route vertex sees.
pub fn sampled_unseen(route: &Polyline, poly: &ConvexPolygon, samples: usize, seed: u64) -> usize {
    let (lo, hi) = poly.bounding_box();
    let c = lo.lerp(hi, 0.5);
    let half = (hi - lo) * 1.5;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unseen = 0;
    let mut drawn = 0;
    while drawn < samples {
        let q = Point::new(c.x + half.x * rng.gen_range(-1.0..1.0), c.y + half.y * rng.gen_range(-1.0..1.0));
        if poly.contains_interior(q) {
            continue;
        }
        drawn += 1;
        if !route.points().iter().any(|&p| !poly.segment_crosses_interior(p, q)) {
            unseen += 1;
        }
    }
    unseen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)])
            .unwrap()
    }

    #[test]
    fn three_edges_cover_the_square() {
        let route =
            Polyline::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)]);
        let sq = square();
        assert!(verify_watchman(&route, &sq, default_tolerance(&sq)).ok);
        assert_eq!(sampled_unseen(&route, &sq, 500, 1), 0);
    }

    #[test]
    fn single_point_misses_three() {
        let sq = square();
        let c = verify_watchman(&Polyline::single(Point::new(0.5, -1.0)), &sq, default_tolerance(&sq));
        assert!(!c.ok);
        assert_eq!(c.missed, vec![1, 2, 3]);
        assert!(sampled_unseen(&Polyline::single(Point::new(0.5, -1.0)), &sq, 500, 1) > 0);
    }
}
