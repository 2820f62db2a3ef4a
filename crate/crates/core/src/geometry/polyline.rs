use serde::{Deserialize, Serialize};

use super::{ConvexPolygon, EdgeMask, Point};

/// An ordered point sequence with cumulative arc length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    points: Vec<Point>,
    cumulative: Vec<f64>,
}

impl Polyline {
    pub fn new(points: Vec<Point>) -> Self {
        assert!(!points.is_empty(), "a polyline needs at least one point");
        let mut cumulative = Vec::with_capacity(points.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in points.windows(2) {
            acc += w[0].dist(w[1]);
            cumulative.push(acc);
        }
        Self { points, cumulative }
    }

    pub fn single(p: Point) -> Self {
        Self::new(vec![p])
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn cumulative_lengths(&self) -> &[f64] {
        &self.cumulative
    }

    #[inline]
    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    #[inline]
    pub fn start(&self) -> Point {
        self.points[0]
    }

    #[inline]
    pub fn end(&self) -> Point {
        *self.points.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Appends a point, skipping exact duplicates of the current end.
    pub fn push(&mut self, p: Point) {
        if p == self.end() {
            return;
        }
        let acc = self.length() + self.end().dist(p);
        self.points.push(p);
        self.cumulative.push(acc);
    }

    /// Appends `other`, whose first point should coincide with our end.
    pub fn extend(&mut self, other: &Polyline) {
        for &p in other.points() {
            self.push(p);
        }
    }

    /// Point at arc length `s` (clamped to the ends).
    pub fn point_at(&self, s: f64) -> Point {
        if s <= 0.0 {
            return self.start();
        }
        if s >= self.length() {
            return self.end();
        }
        let k = self.cumulative.partition_point(|&c| c <= s).max(1);
        let (a, b) = (self.points[k - 1], self.points[k]);
        let seg = self.cumulative[k] - self.cumulative[k - 1];
        if seg == 0.0 {
            return a;
        }
        a.lerp(b, (s - self.cumulative[k - 1]) / seg)
    }

    pub fn reversed(&self) -> Polyline {
        let mut pts = self.points.clone();
        pts.reverse();
        Polyline::new(pts)
    }

    /// True when no segment enters the open interior of `poly`.
    pub fn avoids(&self, poly: &ConvexPolygon) -> bool {
        self.points.windows(2).all(|w| !poly.segment_crosses_interior(w[0], w[1]))
            && !self.points.iter().any(|&p| poly.contains_interior(p))
    }

    /// Half-planes touched by the route. A segment meets a half-plane iff one
    /// of its endpoints does, so only the vertices need checking.
    pub fn visited_mask(&self, poly: &ConvexPolygon, tol: f64) -> EdgeMask {
        self.points.iter().fold(0, |m, &p| m | poly.half_plane_mask(p, tol))
    }
}
