use std::f64::consts::TAU;

use super::{eps_scale, full_mask, EdgeMask, Point, MAX_VERTICES};
use crate::error::{Error, Result};

/// The non-supporting half-plane of one obstacle edge: the closed region on
/// the far side of the edge's supporting line. Visiting any of its points
/// reveals all of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub edge_index: usize,
    /// A point on the boundary line (the edge's start vertex).
    pub point: Point,
    /// Unit direction of the boundary line (the edge direction).
    pub direction: Point,
    /// Unit normal pointing away from the obstacle, into the half-plane.
    pub outward_normal: Point,
}

impl HalfPlane {
    /// Positive inside the half-plane, negative on the obstacle side.
    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.outward_normal.dot(p - self.point)
    }

    #[inline]
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.signed_distance(p) >= -tol
    }

    /// Orthogonal projection of `p` onto the boundary line.
    #[inline]
    pub fn foot(&self, p: Point) -> Point {
        p - self.outward_normal * self.signed_distance(p)
    }
}

/// Tangency vertices of the obstacle as seen from an outside point.
///
/// `left` and `right` are named from the viewer's perspective while looking
/// at the obstacle. The visible chain runs counterclockwise from `left` to
/// `right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tangency {
    pub left_vertex_index: usize,
    pub right_vertex_index: usize,
}

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    normals: Vec<Point>,
    eps: f64,
}

impl ConvexPolygon {
    /// Validates `vertices` and returns a counterclockwise polygon. Clockwise
    /// input is reversed.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if n > MAX_VERTICES {
            return Err(Error::InvalidDims(format!("at most {MAX_VERTICES} vertices supported, got {n}")));
        }
        let eps = eps_scale() * bbox_diagonal(&vertices);
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i].dist(vertices[j]) <= eps {
                    return Err(Error::DegenerateVertex(i, j));
                }
            }
        }
        let mut vertices = vertices;
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        let mut turning = 0.0;
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let a = cur - prev;
            let b = next - cur;
            // height of `next` over the incoming edge line
            if a.cross(b) / a.norm() <= eps {
                return Err(Error::NotConvex(i));
            }
            turning += a.cross(b).atan2(a.dot(b));
        }
        if (turning - TAU).abs() > 1e-6 {
            return Err(Error::NotConvex(0));
        }
        let normals = (0..n)
            .map(|i| {
                let d = vertices[(i + 1) % n] - vertices[i];
                // ccw polygon: interior on the left, outward normal on the right
                Point::new(d.y, -d.x).normalized().expect("edge has positive length")
            })
            .collect();
        Ok(Self { vertices, normals, eps })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.len()]
    }

    /// Geometric tolerance used by all predicates on this polygon.
    #[inline]
    pub fn eps(&self) -> f64 {
        self.eps
    }

    #[inline]
    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    #[inline]
    pub fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        self.vertex(i).dist(self.vertex(i + 1))
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len()).map(|i| self.edge_length(i)).sum()
    }

    pub fn diagonal(&self) -> f64 {
        bbox_diagonal(&self.vertices)
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        bbox(&self.vertices)
    }

    /// Distance from `p` to the line of edge `i`, signed positive in `H_i`.
    #[inline]
    pub fn signed_distance(&self, i: usize, p: Point) -> f64 {
        self.normals[i].dot(p - self.vertices[i])
    }

    #[inline]
    pub fn outward_normal(&self, i: usize) -> Point {
        self.normals[i]
    }

    pub fn supporting_half_plane(&self, i: usize) -> Result<HalfPlane> {
        if i >= self.len() {
            return Err(Error::EdgeIndex { index: i, len: self.len() });
        }
        let point = self.vertices[i];
        let direction = (self.vertex(i + 1) - point).normalized().expect("validated edge");
        Ok(HalfPlane { edge_index: i, point, direction, outward_normal: self.normals[i] })
    }

    pub fn half_planes(&self) -> Vec<HalfPlane> {
        (0..self.len()).map(|i| self.supporting_half_plane(i).unwrap()).collect()
    }

    /// Edges whose closed half-plane contains `p` within `tol`.
    pub fn half_plane_mask(&self, p: Point, tol: f64) -> EdgeMask {
        let mut m = 0;
        for i in 0..self.len() {
            if self.signed_distance(i, p) >= -tol {
                m |= 1 << i;
            }
        }
        m
    }

    #[inline]
    pub fn full_mask(&self) -> EdgeMask {
        full_mask(self.len())
    }

    /// True if `p` lies in the open interior (deeper than the tolerance).
    pub fn contains_interior(&self, p: Point) -> bool {
        (0..self.len()).all(|i| self.signed_distance(i, p) < -self.eps)
    }

    /// True if `p` lies on the boundary within tolerance.
    pub fn on_boundary(&self, p: Point) -> bool {
        !self.contains_interior(p) && (0..self.len()).all(|i| self.signed_distance(i, p) <= self.eps)
    }

    pub fn check_outside(&self, p: Point) -> Result<()> {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
        if self.contains_interior(p) {
            return Err(Error::PointInsideObstacle(p.x, p.y));
        }
        Ok(())
    }

    /// Whether the closed segment `ab` meets the open interior of the polygon.
    ///
    /// Clips the segment parameter range against every edge constraint
    /// `d_i < -eps`; the segment is blocked when the remaining interval has
    /// positive length.
    pub fn segment_crosses_interior(&self, a: Point, b: Point) -> bool {
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        let d = b - a;
        for i in 0..self.len() {
            // d_i(a + t d) = s0 + t * ds  must be < -eps
            let s0 = self.signed_distance(i, a);
            let ds = self.normals[i].dot(d);
            if ds == 0.0 {
                if s0 >= -self.eps {
                    return false;
                }
                continue;
            }
            let t = (-self.eps - s0) / ds;
            if ds > 0.0 {
                hi = hi.min(t);
            } else {
                lo = lo.max(t);
            }
            if lo >= hi {
                return false;
            }
        }
        let len = d.norm();
        // a positive-length overlap that is not just a tolerance artefact
        (hi - lo) * len > self.eps || (len == 0.0 && lo < hi)
    }

    /// Mutual visibility: the segment `pq` avoids the open interior.
    pub fn visible(&self, p: Point, q: Point) -> Result<bool> {
        self.check_outside(p)?;
        self.check_outside(q)?;
        Ok(!self.segment_crosses_interior(p, q))
    }

    /// Edges facing `p` (including grazing ones), as a counterclockwise run
    /// `(first_edge, count)`. `None` when no edge faces `p`, which only
    /// happens for interior points.
    fn facing_run(&self, p: Point) -> Option<(usize, usize)> {
        let n = self.len();
        let facing: Vec<bool> = (0..n).map(|i| self.signed_distance(i, p) >= -self.eps).collect();
        let count = facing.iter().filter(|f| **f).count();
        if count == 0 {
            return None;
        }
        if count == n {
            // only possible for a degenerate tolerance; treat as facing all
            return Some((0, n));
        }
        let start = (0..n).find(|&i| facing[i] && !facing[(i + n - 1) % n])?;
        let mut len = 0;
        while len < n && facing[(start + len) % n] {
            len += 1;
        }
        Some((start, len))
    }

    /// The counterclockwise chain of vertices visible from `p`, from the
    /// viewer's left tangency vertex to the right one.
    pub fn visible_chain(&self, p: Point) -> Result<Vec<usize>> {
        self.check_outside(p)?;
        let (start, len) = self.facing_run(p).ok_or(Error::PointInsideObstacle(p.x, p.y))?;
        let n = self.len();
        let count = (len + 1).min(n);
        Ok((0..count).map(|k| (start + k) % n).collect())
    }

    /// Extreme visible vertices from `p`. Grazing edges count as visible, so a
    /// point on an edge's supporting line sees both of its endpoints.
    pub fn extreme_visible_vertices(&self, p: Point) -> Result<Tangency> {
        let chain = self.visible_chain(p)?;
        Ok(Tangency { left_vertex_index: chain[0], right_vertex_index: *chain.last().unwrap() })
    }

    /// Vertex mean with unit masses (not the area centroid).
    pub fn centroid(&self) -> Point {
        let n = self.len() as f64;
        let s = self.vertices.iter().fold(Point::default(), |acc, &v| acc + v);
        s * (1.0 / n)
    }

    /// Largest distance from the vertex mean to a vertex.
    pub fn circumradius(&self) -> f64 {
        let c = self.centroid();
        self.vertices.iter().map(|v| v.dist(c)).fold(0.0, f64::max)
    }

    /// Applies `f` to every vertex and revalidates.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&v| f(v)).collect())
    }
}

fn bbox(points: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

fn bbox_diagonal(points: &[Point]) -> f64 {
    let (lo, hi) = bbox(points);
    (hi - lo).norm()
}

fn signed_area(points: &[Point]) -> f64 {
    let n = points.len();
    (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum::<f64>() * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    pub(crate) fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])).unwrap()
    }

    #[test]
    fn validate_examples() {
        let sq = unit_square();
        assert_eq!(sq.vertices()[2], Point::new(1.0, 1.0));
        let cw = ConvexPolygon::new(pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)])).unwrap();
        assert!(signed_area(cw.vertices()) > 0.0);
        assert_eq!(cw.len(), 4);
        assert!(matches!(
            ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (1.0, 1.0)])),
            Err(Error::NotConvex(_))
        ));
        assert_eq!(ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0)])), Err(Error::TooFewVertices(2)));
        assert!(matches!(
            ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)])),
            Err(Error::DegenerateVertex(1, 2))
        ));
        assert_eq!(ConvexPolygon::new(pts(&[(0.0, 0.0), (f64::NAN, 0.0), (0.0, 1.0)])), Err(Error::NonFinite));
    }

    #[test]
    fn rejects_reflex_and_star() {
        let dart = pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.5), (1.0, 2.0)]);
        assert!(matches!(ConvexPolygon::new(dart), Err(Error::NotConvex(_))));
        let star: Vec<Point> = (0..5)
            .map(|k| {
                let a = (k as f64) * 4.0 * std::f64::consts::PI / 5.0;
                Point::new(a.cos(), a.sin())
            })
            .collect();
        assert!(ConvexPolygon::new(star).is_err());
    }

    #[test]
    fn half_plane_examples() {
        let sq = unit_square();
        let h = sq.supporting_half_plane(0).unwrap();
        assert!((h.outward_normal - Point::new(0.0, -1.0)).norm() < 1e-15);
        assert!(h.contains(Point::new(0.3, -2.0), 0.0));
        let h = sq.supporting_half_plane(1).unwrap();
        assert!((h.outward_normal - Point::new(1.0, 0.0)).norm() < 1e-15);
        assert!(sq.supporting_half_plane(4).is_err());

        let tri = ConvexPolygon::new(pts(&[(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)])).unwrap();
        let h = tri.supporting_half_plane(1).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((h.outward_normal - Point::new(s, s)).norm() < 1e-15);
        // {x + y >= 2}: substitute every vertex
        for &v in tri.vertices() {
            assert!(h.signed_distance(v) <= tri.eps());
        }
        assert!((h.signed_distance(Point::new(2.0, 2.0)) - 2.0 * s).abs() < 1e-12);
    }

    #[test]
    fn visibility_examples() {
        let sq = unit_square();
        let v = |a: (f64, f64), b: (f64, f64)| sq.visible(Point::new(a.0, a.1), Point::new(b.0, b.1)).unwrap();
        assert!(!v((-1.0, 0.5), (2.0, 0.5)));
        assert!(v((-1.0, -1.0), (2.0, -1.0)));
        assert!(v((-1.0, 0.0), (2.0, 0.0)));
        // touching a single vertex grazes the closure only
        assert!(v((-1.0, 1.0), (1.0, -1.0)));
        assert!(!v((-1.0, -0.5), (2.0, 1.0)));
        assert!(!v((-1.0, 2.0), (2.0, -1.0)));
        assert!(v((-0.5, 0.5), (0.5, -0.5)));
        assert_eq!(sq.visible(Point::new(0.5, 0.5), Point::new(3.0, 3.0)), Err(Error::PointInsideObstacle(0.5, 0.5)));
    }

    #[test]
    fn tangency_examples() {
        let sq = unit_square();
        let t = sq.extreme_visible_vertices(Point::new(0.5, -1.0)).unwrap();
        assert_eq!((t.left_vertex_index, t.right_vertex_index), (0, 1));
        let t = sq.extreme_visible_vertices(Point::new(-1.0, -1.0)).unwrap();
        assert_eq!((t.left_vertex_index, t.right_vertex_index), (3, 1));
        let t = sq.extreme_visible_vertices(Point::new(2.0, 0.5)).unwrap();
        assert_eq!((t.left_vertex_index, t.right_vertex_index), (1, 2));
        // on the supporting line of the bottom edge: grazing edge is visible
        let chain = sq.visible_chain(Point::new(3.0, 0.0)).unwrap();
        assert_eq!(chain, vec![0, 1, 2]);
        // boundary point sees the edge it lies on
        let chain = sq.visible_chain(Point::new(0.5, 0.0)).unwrap();
        assert_eq!(chain, vec![0, 1]);
    }

    #[test]
    fn centroid_examples() {
        assert_eq!(unit_square().centroid(), Point::new(0.5, 0.5));
        let tri = ConvexPolygon::new(pts(&[(0.0, 0.0), (3.0, 0.0), (0.0, 3.0)])).unwrap();
        assert!((tri.centroid() - Point::new(1.0, 1.0)).norm() < 1e-15);
        let thin = ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.01)])).unwrap();
        assert!((thin.centroid() - Point::new(1.0 / 3.0, 0.01 / 3.0)).norm() < 1e-15);
        assert!(thin.contains_interior(thin.centroid()));
    }

    #[test]
    fn masks() {
        let sq = unit_square();
        assert_eq!(sq.half_plane_mask(Point::new(0.5, -1.0), sq.eps()), 0b0001);
        assert_eq!(sq.half_plane_mask(Point::new(1.0, 0.0), sq.eps()), 0b0011);
        assert_eq!(sq.full_mask(), 0b1111);
    }
}
