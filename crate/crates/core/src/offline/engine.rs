//! Shared machinery for the exact route enumerations: per-vertex masks,
//! boundary-line intersections, and memoized "finish from here" queries.

use std::collections::HashMap;

use super::Waypoint;
use crate::geometry::{reflect_point, ConvexPolygon, Direction, EdgeMask, Point};

/// How a route is finished from an anchor point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct EndPick {
    pub cost: f64,
    pub point: Point,
    /// `None` when the anchor already covers everything.
    pub wp: Option<Waypoint>,
}

/// A walk along the boundary from a vertex followed by an [`EndPick`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailPick {
    pub cost: f64,
    pub dir: Direction,
    pub steps: usize,
    pub end: EndPick,
}

pub(crate) struct Engine<'a> {
    pub poly: &'a ConvexPolygon,
    pub n: usize,
    pub eps: f64,
    pub full: EdgeMask,
    vmask: Vec<EdgeMask>,
    /// `apex[i][j]`: intersection of boundary lines `i` and `j`, if not parallel.
    apex: Vec<Vec<Option<Point>>>,
    end_memo: HashMap<(usize, EdgeMask), Option<EndPick>>,
    tail_memo: HashMap<(usize, EdgeMask), Option<TailPick>>,
}

impl<'a> Engine<'a> {
    #[allow(clippy::needless_range_loop)]
    pub fn new(poly: &'a ConvexPolygon) -> Self {
        let n = poly.len();
        let eps = poly.eps();
        let vmask = (0..n).map(|k| poly.half_plane_mask(poly.vertex(k), eps)).collect();
        let mut apex = vec![vec![None; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let p = line_intersection(poly, i, j);
                apex[i][j] = p;
                apex[j][i] = p;
            }
        }
        Self { poly, n, eps, full: poly.full_mask(), vmask, apex, end_memo: HashMap::new(), tail_memo: HashMap::new() }
    }

    #[inline]
    pub fn mask(&self, p: Point) -> EdgeMask {
        self.poly.half_plane_mask(p, self.eps)
    }

    #[inline]
    pub fn vmask(&self, k: usize) -> EdgeMask {
        self.vmask[k]
    }

    #[inline]
    pub fn legal(&self, a: Point, b: Point) -> bool {
        !self.poly.segment_crosses_interior(a, b)
    }

    #[inline]
    pub fn apex(&self, i: usize, j: usize) -> Option<Point> {
        self.apex[i][j]
    }

    /// Perpendicular foot of `p` on boundary line `i`.
    #[inline]
    pub fn foot(&self, i: usize, p: Point) -> Point {
        p - self.poly.outward_normal(i) * self.poly.signed_distance(i, p)
    }

    /// Mirror image of `p` across boundary line `i`.
    pub fn mirror(&self, i: usize, p: Point) -> Point {
        let a = self.poly.vertex(i);
        reflect_point(p, a, self.poly.vertex(i + 1) - a).expect("validated edge")
    }

    /// Cheapest straight finish from `p` into every half-plane of `todo`:
    /// the projection of `p` onto their intersection, which is a foot on one
    /// boundary line or the apex of two.
    pub fn end_from(&self, p: Point, todo: EdgeMask) -> Option<EndPick> {
        if todo == 0 {
            return Some(EndPick { cost: 0.0, point: p, wp: None });
        }
        let mut best: Option<EndPick> = None;
        let mut consider = |q: Point, wp: Waypoint| {
            let cost = p.dist(q);
            if best.is_some_and(|b| cost >= b.cost) {
                return;
            }
            if self.mask(q) & todo != todo || !self.legal(p, q) {
                return;
            }
            best = Some(EndPick { cost, point: q, wp: Some(wp) });
        };
        let idx: Vec<usize> = bits(todo).collect();
        for &i in &idx {
            consider(self.foot(i, p), Waypoint::Foot(i));
        }
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                if let Some(q) = self.apex(i, j) {
                    consider(q, Waypoint::Apex(i, j));
                }
            }
        }
        best
    }

    pub fn end_from_vertex(&mut self, k: usize, todo: EdgeMask) -> Option<EndPick> {
        if let Some(e) = self.end_memo.get(&(k, todo)) {
            return *e;
        }
        let e = self.end_from(self.poly.vertex(k), todo);
        self.end_memo.insert((k, todo), e);
        e
    }

    /// Cheapest finish from vertex `b` covering `todo`: walk the boundary
    /// some steps in either direction, then finish straight.
    pub fn tail(&mut self, b: usize, todo: EdgeMask) -> Option<TailPick> {
        let todo = todo & !self.vmask[b];
        if let Some(t) = self.tail_memo.get(&(b, todo)) {
            return *t;
        }
        let mut best: Option<TailPick> = None;
        for dir in Direction::BOTH {
            let mut k = b;
            let mut walk = 0.0;
            let mut left = todo;
            for steps in 0..self.n {
                if steps > 0 {
                    let nk = dir.step(k, self.n);
                    walk += self.poly.vertex(k).dist(self.poly.vertex(nk));
                    k = nk;
                    left &= !self.vmask[k];
                } else if dir == Direction::Cw {
                    // zero steps was already tried going the other way
                    continue;
                }
                if best.is_some_and(|t| walk >= t.cost) {
                    break;
                }
                if let Some(e) = self.end_from_vertex(k, left) {
                    let cost = walk + e.cost;
                    if best.is_none_or(|t| cost < t.cost) {
                        best = Some(TailPick { cost, dir, steps, end: e });
                    }
                }
                if left == 0 {
                    break;
                }
            }
        }
        self.tail_memo.insert((b, todo), best);
        best
    }

    /// Vertices visited by walking `steps` edges from `b` in `dir`,
    /// excluding `b` itself.
    pub fn walk(&self, b: usize, dir: Direction, steps: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        (1..=steps).scan(b, move |k, _| {
            *k = dir.step(*k, n);
            Some(*k)
        })
    }

    /// Specular bounce off boundary line `i` on the way from `a` to `b`, both
    /// strictly on the obstacle side of the line. Returns the bounce point.
    pub fn bounce(&self, i: usize, a: Point, b: Point) -> Option<Point> {
        let da = self.poly.signed_distance(i, a);
        let db = self.poly.signed_distance(i, b);
        if da >= -self.eps || db >= -self.eps {
            return None;
        }
        let bm = self.mirror(i, b);
        let t = da / (da + db);
        Some(a.lerp(bm, t))
    }

    /// Bounce off line `i` from `a`, then drop perpendicularly onto line `j`.
    /// Returns `(bounce point, foot on line j)`.
    ///
    /// Unfolding: mirror line `j` across line `i` and drop the perpendicular
    /// from `a` onto the image; where it crosses line `i` is the bounce.
    pub fn bounce_to_line(&self, i: usize, j: usize, a: Point) -> Option<(Point, Point)> {
        let poly = self.poly;
        let da = poly.signed_distance(i, a);
        if da >= -self.eps || poly.signed_distance(j, a) >= -self.eps {
            return None;
        }
        let ni = poly.outward_normal(i);
        let nj = poly.outward_normal(j);
        let nj_img = nj - ni * (2.0 * nj.dot(ni));
        let qj_img = self.mirror(i, poly.vertex(j));
        let h = nj_img.dot(a - qj_img);
        // the image half-plane must lie ahead, beyond line i
        if h >= 0.0 {
            return None;
        }
        let f_img = a - nj_img * h;
        let df = poly.signed_distance(i, f_img);
        if df <= 0.0 {
            return None;
        }
        let r = a.lerp(f_img, -da / (df - da));
        // after the bounce we must still be outside H_j, else no bounce needed
        if poly.signed_distance(j, r) >= -self.eps {
            return None;
        }
        Some((r, self.mirror(i, f_img)))
    }
}

/// Indices of set bits, ascending.
pub(crate) fn bits(mut m: EdgeMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

pub(crate) fn line_intersection(poly: &ConvexPolygon, i: usize, j: usize) -> Option<Point> {
    let (ni, nj) = (poly.outward_normal(i), poly.outward_normal(j));
    let det = ni.cross(nj);
    if det.abs() < 1e-12 {
        return None;
    }
    let ci = ni.dot(poly.vertex(i));
    let cj = nj.dot(poly.vertex(j));
    Some(Point::new((ci * nj.y - cj * ni.y) / det, (ni.x * cj - nj.x * ci) / det))
}
