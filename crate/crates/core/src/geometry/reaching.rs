//! Shortest obstacle-avoiding paths around a convex polygon.
//!
//! A shortest path between two points that cannot see each other is a taut
//! string: a tangent segment to a vertex, a run of obstacle edges, and a
//! tangent segment out. Which run is used depends on the side the path
//! passes the obstacle on.

use super::{ConvexPolygon, HalfPlane, Point, Polyline};
use crate::error::Result;

/// Side on which a path passes the obstacle, as a revolution about it.
/// `Ccw` walks the vertices in increasing index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Cw,
    Ccw,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Ccw, Direction::Cw];

    #[inline]
    pub fn step(self, i: usize, n: usize) -> usize {
        match self {
            Direction::Ccw => (i + 1) % n,
            Direction::Cw => (i + n - 1) % n,
        }
    }

    #[inline]
    fn turn_sign(self) -> f64 {
        match self {
            Direction::Ccw => 1.0,
            Direction::Cw => -1.0,
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Ccw => Direction::Cw,
            Direction::Cw => Direction::Ccw,
        }
    }
}

/// Shortest path from `ps` to `pt` passing the obstacle on side `dir`.
///
/// Mutually visible points are joined by a straight segment regardless of
/// `dir`. Otherwise every tangent-vertex pair `(a, b)` is tried with the
/// boundary walk from `a` to `b` in direction `dir`; a candidate must turn
/// consistently towards the obstacle at both ends, which pins it to the
/// requested side. The shortest legal candidate is the taut path.
pub fn reaching_path(ps: Point, pt: Point, poly: &ConvexPolygon, dir: Direction) -> Result<Polyline> {
    poly.check_outside(ps)?;
    poly.check_outside(pt)?;
    if !poly.segment_crosses_interior(ps, pt) {
        return Ok(Polyline::new(vec![ps, pt]));
    }
    let n = poly.len();
    let vis_s: Vec<bool> = (0..n).map(|k| !poly.segment_crosses_interior(ps, poly.vertex(k))).collect();
    let vis_t: Vec<bool> = (0..n).map(|k| !poly.segment_crosses_interior(poly.vertex(k), pt)).collect();
    let sign = dir.turn_sign();
    let turn_ok = |p: Point, q: Point, r: Point| {
        let c = (q - p).cross(r - q);
        let scale = (q - p).norm() * (r - q).norm();
        sign * c >= -1e-12 * scale
    };

    let mut best: Option<(f64, usize, usize)> = None;
    for a in (0..n).filter(|&a| vis_s[a]) {
        let va = poly.vertex(a);
        let head = ps.dist(va);
        let mut walk = 0.0;
        let mut b = a;
        for steps in 0..n {
            if steps > 0 {
                let nb = dir.step(b, n);
                walk += poly.vertex(b).dist(poly.vertex(nb));
                b = nb;
            }
            if !vis_t[b] {
                continue;
            }
            let vb = poly.vertex(b);
            let ok = if steps == 0 {
                turn_ok(ps, va, pt)
            } else {
                turn_ok(ps, va, poly.vertex(dir.step(a, n))) && turn_ok(poly.vertex(prev_of(dir, b, n)), vb, pt)
            };
            if !ok {
                continue;
            }
            let total = head + walk + vb.dist(pt);
            if best.is_none_or(|(l, _, _)| total < l) {
                best = Some((total, a, b));
            }
        }
    }
    let (_, a, b) = best.expect("a convex obstacle can always be passed on either side");
    let mut pts = vec![ps, poly.vertex(a)];
    let mut k = a;
    while k != b {
        k = dir.step(k, n);
        pts.push(poly.vertex(k));
    }
    pts.push(pt);
    Ok(Polyline::new(pts))
}

#[inline]
fn prev_of(dir: Direction, i: usize, n: usize) -> usize {
    dir.opposite().step(i, n)
}

/// Shortest obstacle-avoiding path between two points.
pub fn geodesic(ps: Point, pt: Point, poly: &ConvexPolygon) -> Result<Polyline> {
    let a = reaching_path(ps, pt, poly, Direction::Ccw)?;
    let b = reaching_path(ps, pt, poly, Direction::Cw)?;
    Ok(if b.length() < a.length() { b } else { a })
}

/// Shortest obstacle-avoiding path from `p` into the closed half-plane `h`.
///
/// The path either drops perpendicularly onto the boundary line straight
/// from `p`, or first travels a geodesic to some vertex and drops
/// perpendicularly from there. The minimum over those candidates is returned.
pub fn geodesic_to_half_plane(p: Point, h: &HalfPlane, poly: &ConvexPolygon) -> Result<(f64, Polyline)> {
    poly.check_outside(p)?;
    if h.contains(p, poly.eps()) {
        return Ok((0.0, Polyline::single(p)));
    }
    let mut best: Option<Polyline> = None;
    let mut consider = |pl: Polyline| {
        if best.as_ref().is_none_or(|b| pl.length() < b.length()) {
            best = Some(pl);
        }
    };
    let foot = h.foot(p);
    if !poly.segment_crosses_interior(p, foot) {
        consider(Polyline::new(vec![p, foot]));
    }
    for k in 0..poly.len() {
        let w = poly.vertex(k);
        let wf = if h.contains(w, poly.eps()) { w } else { h.foot(w) };
        if poly.segment_crosses_interior(w, wf) {
            continue;
        }
        let mut pl = geodesic(p, w, poly)?;
        pl.push(wf);
        consider(pl);
    }
    let pl = best.expect("the endpoints of the edge always reach its half-plane");
    Ok((pl.length(), pl))
}
