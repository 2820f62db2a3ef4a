//! Everything the planner knows: sighted vertices, edges confirmed by
//! adjacency in an observed chain, and the extreme lines of sight so far.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::sensor::{Observation, VertexId};
use crate::geometry::{eps_scale, ConvexPolygon, Point};

/// Which side(s) a vertex has been a tangency vertex on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Sides {
    pub left: bool,
    pub right: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sighting {
    pub vertex_index: VertexId,
    pub point: Point,
    pub first_seen_arclen: f64,
    pub seen_as_extremal: Sides,
    pub times_extremal: usize,
}

/// A line of sight from a robot position through a tangency vertex.
/// `angle` is unwrapped continuously along the run, so comparisons between
/// rays taken at different times are meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ray {
    pub anchor: Point,
    pub vertex_id: VertexId,
    pub vertex: Point,
    pub angle: f64,
}

impl Ray {
    pub fn direction(&self) -> Point {
        Point::new(self.angle.cos(), self.angle.sin())
    }
}

#[derive(Debug, Clone)]
pub struct Knowledge {
    sightings: BTreeMap<VertexId, Sighting>,
    next: BTreeMap<VertexId, VertexId>,
    prev: BTreeMap<VertexId, VertexId>,
    /// Most clockwise left line of sight so far.
    pub ext_left: Option<Ray>,
    /// Most counterclockwise right line of sight so far.
    pub ext_right: Option<Ray>,
    cur: Option<(VertexId, f64, VertexId, f64)>,
    hull: Vec<Point>,
    last: Option<Observation>,
}

impl Default for Knowledge {
    fn default() -> Self {
        Self::new()
    }
}

impl Knowledge {
    pub fn new() -> Self {
        Self {
            sightings: BTreeMap::new(),
            next: BTreeMap::new(),
            prev: BTreeMap::new(),
            ext_left: None,
            ext_right: None,
            cur: None,
            hull: Vec::new(),
            last: None,
        }
    }

    pub fn sightings(&self) -> impl Iterator<Item = &Sighting> {
        self.sightings.values()
    }

    pub fn sighting(&self, id: VertexId) -> Option<&Sighting> {
        self.sightings.get(&id)
    }

    pub fn seen_count(&self) -> usize {
        self.sightings.len()
    }

    pub fn point(&self, id: VertexId) -> Point {
        self.sightings[&id].point
    }

    pub fn successor(&self, id: VertexId) -> Option<VertexId> {
        self.next.get(&id).copied()
    }

    pub fn predecessor(&self, id: VertexId) -> Option<VertexId> {
        self.prev.get(&id).copied()
    }

    pub fn last_observation(&self) -> Option<&Observation> {
        self.last.as_ref()
    }

    /// Folds in one observation made after travelling `arclen`.
    pub fn observe(&mut self, obs: &Observation, arclen: f64) {
        let mut new_vertex = false;
        for &(id, p) in &obs.chain {
            self.sightings.entry(id).or_insert_with(|| {
                new_vertex = true;
                Sighting {
                    vertex_index: id,
                    point: p,
                    first_seen_arclen: arclen,
                    seen_as_extremal: Sides::default(),
                    times_extremal: 0,
                }
            });
        }
        for w in obs.chain.windows(2) {
            self.next.insert(w[0].0, w[1].0);
            self.prev.insert(w[1].0, w[0].0);
        }
        if new_vertex {
            self.hull = convex_hull(self.sightings.values().map(|s| s.point).collect());
        }

        let pos = obs.position;
        let (lid, lp) = obs.left();
        let (rid, rp) = obs.right();
        let raw_l = (lp - pos).angle();
        let raw_r = (rp - pos).angle();
        let (al, ar) = match self.cur {
            None => {
                // the left tangent lies counterclockwise of the right one
                let mut l = raw_l;
                while l <= raw_r {
                    l += TAU;
                }
                (l, raw_r)
            }
            Some((_, pl, _, pr)) => (unwrap_near(raw_l, pl), unwrap_near(raw_r, pr)),
        };
        let degenerate_l = lp.dist(pos) == 0.0;
        let degenerate_r = rp.dist(pos) == 0.0;
        let prev = self.cur;
        self.cur = Some((lid, al, rid, ar));
        if prev.is_none_or(|c| c.0 != lid) {
            let s = self.sightings.get_mut(&lid).unwrap();
            s.seen_as_extremal.left = true;
            s.times_extremal += 1;
        }
        if prev.is_none_or(|c| c.2 != rid) {
            let s = self.sightings.get_mut(&rid).unwrap();
            s.seen_as_extremal.right = true;
            s.times_extremal += 1;
        }
        if !degenerate_l && self.ext_left.is_none_or(|r| al < r.angle) {
            self.ext_left = Some(Ray { anchor: pos, vertex_id: lid, vertex: lp, angle: al });
        }
        if !degenerate_r && self.ext_right.is_none_or(|r| ar > r.angle) {
            self.ext_right = Some(Ray { anchor: pos, vertex_id: rid, vertex: rp, angle: ar });
        }
        self.last = Some(obs.clone());
    }

    fn tol(&self) -> f64 {
        let (lo, hi) = bbox(&self.hull);
        eps_scale() * (hi - lo).norm()
    }

    /// Whether the straight move `a -> b` hits the obstacle, judged from
    /// what has been seen. Exact when `a` is the current position: the first
    /// contact of such a segment lies on the chain visible from `a`.
    pub fn blocked(&self, a: Point, b: Point) -> bool {
        let h = &self.hull;
        let tol = self.tol();
        match h.len() {
            0 | 1 => false,
            2 => proper_crossing(a, b, h[0], h[1], tol),
            n => {
                let mut lo = 0.0f64;
                let mut hi = 1.0f64;
                let d = b - a;
                for i in 0..n {
                    let p = h[i];
                    let e = h[(i + 1) % n] - p;
                    let nrm = match Point::new(e.y, -e.x).normalized() {
                        Some(v) => v,
                        None => continue,
                    };
                    let s0 = nrm.dot(a - p);
                    let ds = nrm.dot(d);
                    if ds == 0.0 {
                        if s0 >= -tol {
                            return false;
                        }
                        continue;
                    }
                    let t = (-tol - s0) / ds;
                    if ds > 0.0 {
                        hi = hi.min(t);
                    } else {
                        lo = lo.max(t);
                    }
                    if lo >= hi {
                        return false;
                    }
                }
                (hi - lo) * d.norm() > tol
            }
        }
    }

    /// Known edges as `(start, end)` ids in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.next.iter().map(|(&a, &b)| (a, b))
    }

    /// Signed distance of `p` from the line of the known edge starting at
    /// `a`; positive in the edge's free half-plane.
    pub fn edge_signed_distance(&self, a: VertexId, p: Point) -> Option<f64> {
        let b = self.successor(a)?;
        let (pa, pb) = (self.point(a), self.point(b));
        let e = pb - pa;
        let nrm = Point::new(e.y, -e.x).normalized()?;
        Some(nrm.dot(p - pa))
    }

    /// The silhouette has closed into a cycle: every vertex is known together
    /// with both of its edges.
    pub fn closed(&self) -> bool {
        let n = self.sightings.len();
        if n < 3 || self.next.len() != n {
            return false;
        }
        let start = *self.sightings.keys().next().unwrap();
        let mut k = start;
        for step in 1..=n {
            match self.next.get(&k) {
                Some(&nk) => k = nk,
                None => return false,
            }
            if k == start {
                return step == n;
            }
        }
        false
    }

    /// The whole obstacle, once the silhouette has closed. Returns the
    /// polygon and the vertex id at each polygon index.
    pub fn known_polygon(&self) -> Option<(ConvexPolygon, Vec<VertexId>)> {
        if !self.closed() {
            return None;
        }
        let start = *self.sightings.keys().next().unwrap();
        let mut ids = vec![start];
        let mut k = self.next[&start];
        while k != start {
            ids.push(k);
            k = self.next[&k];
        }
        let poly = ConvexPolygon::new(ids.iter().map(|id| self.point(*id)).collect()).ok()?;
        Some((poly, ids))
    }

    /// Every known edge's free half-plane contains one of `points`.
    pub fn known_half_planes_visited(&self, points: &[Point]) -> bool {
        let tol = 1e3 * self.tol();
        self.next.keys().all(|&a| points.iter().any(|&p| self.edge_signed_distance(a, p).is_none_or(|d| d >= -tol)))
    }

    /// Diameter of the seen vertex set.
    pub fn diameter(&self) -> f64 {
        let pts: Vec<Point> = self.sightings.values().map(|s| s.point).collect();
        let mut d = 0.0f64;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                d = d.max(pts[i].dist(pts[j]));
            }
        }
        d
    }
}

fn unwrap_near(raw: f64, reference: f64) -> f64 {
    let mut a = raw;
    while a - reference > PI {
        a -= TAU;
    }
    while reference - a > PI {
        a += TAU;
    }
    a
}

fn bbox(points: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    if points.is_empty() {
        return (Point::default(), Point::default());
    }
    (lo, hi)
}

/// Segments `ab` and `cd` cross at a single point interior to both.
fn proper_crossing(a: Point, b: Point, c: Point, d: Point, tol: f64) -> bool {
    let side = |p: Point, q: Point, r: Point| {
        let len = (q - p).norm();
        if len == 0.0 {
            return 0.0;
        }
        (q - p).cross(r - p) / len
    };
    let (d1, d2) = (side(a, b, c), side(a, b, d));
    let (d3, d4) = (side(c, d, a), side(c, d, b));
    ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) && ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol))
}

/// Counterclockwise convex hull without collinear points (monotone chain).
pub(crate) fn convex_hull(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::super::sensor::{PolygonSensor, Sensor};
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)])
            .unwrap()
    }

    #[test]
    fn first_sightings_are_idempotent() {
        let mut sensor = PolygonSensor::new(square());
        let mut k = Knowledge::new();
        let o = sensor.observe(Point::new(0.5, -1.0)).unwrap();
        k.observe(&o, 0.0);
        assert_eq!(k.seen_count(), 2);
        k.observe(&o, 5.0);
        assert_eq!(k.seen_count(), 2);
        assert_eq!(k.sighting(0).unwrap().first_seen_arclen, 0.0);
        assert_eq!(k.sighting(0).unwrap().times_extremal, 1);
        let o = sensor.observe(Point::new(-1.0, -1.0)).unwrap();
        k.observe(&o, 1.0);
        assert_eq!(k.seen_count(), 3);
        assert_eq!(k.sighting(3).unwrap().first_seen_arclen, 1.0);
        assert!(k.sighting(3).unwrap().seen_as_extremal.left);
        assert!(!k.closed());
    }

    #[test]
    fn blocked_matches_truth_from_current_position() {
        let sq = square();
        let mut sensor = PolygonSensor::new(sq.clone());
        let mut k = Knowledge::new();
        let p = Point::new(0.5, -1.0);
        k.observe(&sensor.observe(p).unwrap(), 0.0);
        // only the bottom edge is known: a degenerate hull
        assert!(k.blocked(p, Point::new(0.5, 2.0)));
        assert!(!k.blocked(p, Point::new(2.0, 0.5)));
        assert!(!k.blocked(p, Point::new(1.0, 0.0)));
        let q = Point::new(-1.0, -1.0);
        k.observe(&sensor.observe(q).unwrap(), 1.0);
        for target in [Point::new(2.0, 2.0), Point::new(0.5, 3.0), Point::new(-1.0, 3.0), Point::new(3.0, -1.0)] {
            assert_eq!(k.blocked(q, target), sq.segment_crosses_interior(q, target), "{target:?}");
        }
    }

    #[test]
    fn closes_after_full_sweep() {
        let sq = square();
        let mut sensor = PolygonSensor::new(sq);
        let mut k = Knowledge::new();
        for p in [Point::new(-1.0, -1.0), Point::new(2.0, 2.0)] {
            k.observe(&sensor.observe(p).unwrap(), 0.0);
        }
        assert!(k.closed());
        let (poly, ids) = k.known_polygon().unwrap();
        assert_eq!(poly.len(), 4);
        assert_eq!(ids, vec![0, 1, 2, 3]);
        assert!(k.known_half_planes_visited(&[Point::new(-1.0, -1.0), Point::new(2.0, 2.0)]));
        assert!(!k.known_half_planes_visited(&[Point::new(-1.0, -1.0)]));
    }

    #[test]
    fn hull() {
        let h = convex_hull(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.2, 0.3),
        ]);
        assert_eq!(h, vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.2, 0.3)]);
    }
}
