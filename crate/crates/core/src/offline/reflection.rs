use super::engine::Engine;
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point, Polyline};

/// A two-leg path that bounces off the boundary line of one half-plane and
/// then drops perpendicularly onto the boundary line of another.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionSpec {
    pub source: Point,
    pub mirror_half_plane: usize,
    pub target_half_plane: usize,
    pub reflection_point: Point,
    pub legs: (Polyline, Polyline),
    /// Angle between the incoming leg and the mirror line's normal.
    pub incidence_angle: f64,
    /// Angle between the outgoing leg and the mirror line's normal.
    pub reflection_angle: f64,
}

impl ReflectionSpec {
    pub fn length(&self) -> f64 {
        self.legs.0.length() + self.legs.1.length()
    }

    /// End of the outgoing leg, on the target line.
    pub fn target_point(&self) -> Point {
        self.legs.1.end()
    }
}

/// Shortest path from `s` that touches line `i` and then reaches line `j`,
/// found by unfolding across line `i`.
///
/// `Infeasible` when the unfolded optimum does not actually bounce (the
/// perpendicular misses line `i`, or `s` already lies in either half-plane)
/// or when a leg would cross the obstacle.
pub fn reflection_path(s: Point, i: usize, j: usize, poly: &ConvexPolygon) -> Result<ReflectionSpec> {
    poly.check_outside(s)?;
    let n = poly.len();
    for e in [i, j] {
        if e >= n {
            return Err(Error::EdgeIndex { index: e, len: n });
        }
    }
    if i == j {
        return Err(Error::Infeasible);
    }
    let eng = Engine::new(poly);
    let eps = poly.eps();
    let di = poly.signed_distance(i, s);
    if poly.signed_distance(j, s) >= -eps || di > eps {
        return Err(Error::Infeasible);
    }
    let (r, foot) = if di >= -eps {
        // already on the mirror line: the bounce degenerates to a plain drop
        (s, eng.foot(j, s))
    } else {
        eng.bounce_to_line(i, j, s).ok_or(Error::Infeasible)?
    };
    if !eng.legal(s, r) || !eng.legal(r, foot) {
        return Err(Error::Infeasible);
    }
    let ni = poly.outward_normal(i);
    let angle = |d: Point| -> f64 {
        match d.normalized() {
            Some(u) => u.dot(ni).abs().min(1.0).acos(),
            None => f64::NAN,
        }
    };
    let out = angle(foot - r);
    let inc = if s == r { out } else { angle(r - s) };
    Ok(ReflectionSpec {
        source: s,
        mirror_half_plane: i,
        target_half_plane: j,
        reflection_point: r,
        legs: (Polyline::new(vec![s, r]), Polyline::new(vec![r, foot])),
        incidence_angle: inc,
        reflection_angle: out,
    })
}
