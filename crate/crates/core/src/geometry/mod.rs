//! Planar primitives and the visibility model of a convex obstacle.
//!
//! The obstacle is an *open* convex polygon: its boundary belongs to the free
//! space, so paths may slide along edges and sight lines may graze them.
//! Every degeneracy predicate uses a tolerance proportional to the obstacle's
//! bounding-box diagonal (see [`eps_scale`]).

mod point;
mod polygon;
mod polyline;
mod reaching;

use std::sync::OnceLock;

pub use point::{orientation, reflect_point, Point};
pub use polygon::{ConvexPolygon, HalfPlane, Tangency};
pub use polyline::Polyline;
pub use reaching::{geodesic, geodesic_to_half_plane, reaching_path, Direction};

/// Default multiplier applied to the bounding-box diagonal to obtain the
/// geometric tolerance.
pub const DEFAULT_EPS_SCALE: f64 = 1e-9;

/// Environment variable overriding [`DEFAULT_EPS_SCALE`].
pub const EPS_SCALE_ENV: &str = "WATCHMAN_EPS_SCALE";

/// Relative tolerance multiplier, read once from `WATCHMAN_EPS_SCALE`.
pub fn eps_scale() -> f64 {
    static SCALE: OnceLock<f64> = OnceLock::new();
    *SCALE.get_or_init(|| {
        std::env::var(EPS_SCALE_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v > 0.0)
            .unwrap_or(DEFAULT_EPS_SCALE)
    })
}

/// Bitmask over edge indices. Polygons are limited to 64 edges so a visited
/// set fits in one word.
pub type EdgeMask = u64;

pub const MAX_VERTICES: usize = 64;

#[inline]
pub fn full_mask(n: usize) -> EdgeMask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
