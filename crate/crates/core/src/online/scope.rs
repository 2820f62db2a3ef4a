//! The scope: the angle between the extreme lines of sight, and whether the
//! region they leave unobserved is still unbounded.

use std::f64::consts::TAU;

use serde::Serialize;

use super::knowledge::{Knowledge, Ray};
use crate::error::{Error, Result};
use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScopeKind {
    /// Opening scope: the unobserved region behind the obstacle is unbounded.
    Os,
    /// Closing scope: the extreme lines of sight meet beyond the obstacle.
    Cs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScopeState {
    pub los_left: Ray,
    pub los_right: Ray,
    pub kind: ScopeKind,
    /// Scope angle: the opening of the two extreme lines of sight, or the
    /// apex angle of the closing triangle.
    pub gamma2: f64,
    /// Chord between the extreme vertices, `(right, left)`.
    pub m: (Point, Point),
    /// Distance from the robot to `m`.
    pub ell: f64,
    /// Unit vector perpendicular to the scope's bisector.
    pub q_axis: Point,
    /// Signed offsets of the extreme vertices' projections onto the line
    /// through the robot along `q_axis`, `(right, left)`.
    pub q_offsets: (f64, f64),
    /// Length of the projected chord.
    pub q_hat: f64,
}

impl ScopeState {
    /// Signed scope: positive while the lines of sight diverge.
    pub fn sigma(&self) -> f64 {
        self.los_left.angle - self.los_right.angle
    }

    /// Unit direction of the bisector, pointing away from the robot.
    pub fn bisector(&self) -> Point {
        let a = 0.5 * (self.los_left.angle + self.los_right.angle);
        Point::new(a.cos(), a.sin())
    }
}

/// Current scope as seen from `pos`.
pub fn classify_scope(know: &Knowledge, pos: Point) -> Result<ScopeState> {
    let (Some(l), Some(r)) = (know.ext_left, know.ext_right) else {
        return Err(Error::InsufficientSightings(know.seen_count()));
    };
    if know.seen_count() < 2 {
        return Err(Error::InsufficientSightings(know.seen_count()));
    }
    let sigma = l.angle - r.angle;
    let kind = if rays_meet(&r, &l) { ScopeKind::Cs } else { ScopeKind::Os };
    let gamma2 = sigma.abs().rem_euclid(TAU);
    let m = (r.vertex, l.vertex);
    let ell = point_segment_distance(pos, m.0, m.1);
    let a = 0.5 * (l.angle + r.angle);
    let bis = Point::new(a.cos(), a.sin());
    // right of the bisector when looking along it
    let q_axis = Point::new(bis.y, -bis.x);
    let q_offsets = (q_axis.dot(m.0 - pos), q_axis.dot(m.1 - pos));
    let q_hat = (q_offsets.0 - q_offsets.1).abs();
    Ok(ScopeState { los_left: l, los_right: r, kind, gamma2, m, ell, q_axis, q_offsets, q_hat })
}

/// The rays continuing each line of sight beyond its vertex intersect.
fn rays_meet(r: &Ray, l: &Ray) -> bool {
    if r.vertex_id == l.vertex_id {
        return true;
    }
    let dr = r.direction();
    let dl = l.direction();
    let det = dr.cross(dl);
    let scale = (r.vertex - l.vertex).norm();
    if det.abs() < 1e-12 {
        return false;
    }
    // r.vertex + a dr = l.vertex + b dl
    let w = l.vertex - r.vertex;
    let a = w.cross(dl) / det;
    let b = w.cross(dr) / det;
    a >= -1e-12 * scale && b >= -1e-12 * scale
}

pub(crate) fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * t)
}
