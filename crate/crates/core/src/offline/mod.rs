//! Optimal routes for a known obstacle.
//!
//! A route is a watchman route iff it touches every edge's non-supporting
//! half-plane. Optimal routes are built from three kinds of pieces: taut
//! reaching paths that hug the obstacle, at most one specular reflection off
//! a half-plane boundary line, and a final straight approach into whatever
//! half-planes remain.

mod engine;
mod ofp;
mod osp;
mod reflection;

use serde::{Deserialize, Serialize};

pub use ofp::ofp;
pub use osp::{osp, osp_covering, trivial_upper_bound};
pub use reflection::{reflection_path, ReflectionSpec};

use crate::error::Result;
use crate::geometry::{geodesic_to_half_plane, ConvexPolygon, EdgeMask, Point, Polyline};

/// Shape of an offline route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PathType {
    SimpleReaching,
    Reflection,
    ReflectionThenReaching,
    ReachingReflectionReaching,
    FloatingPerimeter,
}

impl PathType {
    pub fn as_str(self) -> &'static str {
        match self {
            PathType::SimpleReaching => "simple_reaching",
            PathType::Reflection => "reflection",
            PathType::ReflectionThenReaching => "reflection_then_reaching",
            PathType::ReachingReflectionReaching => "reaching_reflection_reaching",
            PathType::FloatingPerimeter => "floating_perimeter",
        }
    }

    pub fn reflections(self) -> usize {
        match self {
            PathType::SimpleReaching | PathType::FloatingPerimeter => 0,
            _ => 1,
        }
    }
}

/// What a route point is, geometrically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Waypoint {
    Start,
    Vertex(usize),
    /// Bounce point on the boundary line of the given half-plane.
    Reflection(usize),
    /// Perpendicular foot on the boundary line of the given half-plane.
    Foot(usize),
    /// Intersection of two boundary lines.
    Apex(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OfflineRoute {
    pub path: Polyline,
    pub path_type: PathType,
    /// One entry per route point.
    pub waypoints: Vec<Waypoint>,
    /// Arc length at which each half-plane is first touched.
    pub visit_times: Vec<Option<f64>>,
    /// The reflection point lies on the supporting line but outside the edge.
    pub off_edge_reflection: bool,
}

impl OfflineRoute {
    pub fn length(&self) -> f64 {
        self.path.length()
    }

    pub(crate) fn build(
        poly: &ConvexPolygon,
        points: Vec<Point>,
        waypoints: Vec<Waypoint>,
        path_type: PathType,
        off_edge_reflection: bool,
    ) -> Self {
        debug_assert_eq!(points.len(), waypoints.len());
        // drop zero-length repeats, keeping the first label
        let mut pts: Vec<Point> = Vec::with_capacity(points.len());
        let mut wps = Vec::with_capacity(points.len());
        for (p, w) in points.into_iter().zip(waypoints) {
            if pts.last() == Some(&p) {
                continue;
            }
            pts.push(p);
            wps.push(w);
        }
        let path = Polyline::new(pts);
        let visit_times = first_visits(&path, poly, poly.eps());
        Self { path, path_type, waypoints: wps, visit_times, off_edge_reflection }
    }
}

/// Arc length of the first point of `route` inside each closed half-plane.
///
/// Exact per segment: signed distance is affine along a segment, so the
/// first crossing is found in closed form.
pub fn first_visits(route: &Polyline, poly: &ConvexPolygon, tol: f64) -> Vec<Option<f64>> {
    let pts = route.points();
    let cum = route.cumulative_lengths();
    (0..poly.len())
        .map(|i| {
            let d0 = poly.signed_distance(i, pts[0]);
            if d0 >= -tol {
                return Some(0.0);
            }
            for k in 1..pts.len() {
                let a = poly.signed_distance(i, pts[k - 1]);
                let b = poly.signed_distance(i, pts[k]);
                if b >= -tol {
                    let t = if b > a { ((-tol - a) / (b - a)).clamp(0.0, 1.0) } else { 1.0 };
                    return Some(cum[k - 1] + t * (cum[k] - cum[k - 1]));
                }
            }
            None
        })
        .collect()
}

/// Mask of half-planes touched by `route`.
pub fn visited_mask(route: &Polyline, poly: &ConvexPolygon, tol: f64) -> EdgeMask {
    route.visited_mask(poly, tol)
}

/// Geodesic distance from `s` to the farthest half-plane: a lower bound on
/// any watchman route from `s`.
pub fn ell_tau(s: Point, poly: &ConvexPolygon) -> Result<f64> {
    poly.check_outside(s)?;
    let mut best = 0.0f64;
    for h in poly.half_planes() {
        let (l, _) = geodesic_to_half_plane(s, &h, poly)?;
        best = best.max(l);
    }
    Ok(best)
}
