//! Brute-force watchman routes by shortest path over a discretized state
//! space, written without touching the library's own solvers.
//!
//! Waypoints: the start, the obstacle vertices, every pairwise intersection
//! of boundary lines, feet of perpendiculars, and evenly spaced samples on
//! every boundary line. States are (waypoint, set of visited half-planes);
//! edges join mutually visible waypoints. The best discrete route is then
//! polished by moving its line samples along their lines.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use watchman::{ConvexPolygon, Point};

#[derive(Debug, Clone)]
pub struct OracleRoute {
    pub length: f64,
    pub points: Vec<Point>,
}

#[derive(Clone, Copy)]
struct Line {
    p: Point,
    u: Point,
    /// Outward unit normal; positive side is the free half-plane.
    nrm: Point,
}

struct Geo {
    verts: Vec<Point>,
    lines: Vec<Line>,
    tol: f64,
}

impl Geo {
    fn new(poly: &ConvexPolygon) -> Self {
        let verts = poly.vertices().to_vec();
        let n = verts.len();
        let lines = (0..n)
            .map(|i| {
                let a = verts[i];
                let d = verts[(i + 1) % n] - a;
                let u = d * (1.0 / d.norm());
                Line { p: a, u, nrm: Point::new(u.y, -u.x) }
            })
            .collect();
        let (mut lo, mut hi) = (verts[0], verts[0]);
        for v in &verts {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        Self { verts, lines, tol: 1e-9 * (hi - lo).norm() }
    }

    fn mask(&self, p: Point) -> u64 {
        let mut m = 0;
        for (i, l) in self.lines.iter().enumerate() {
            if l.nrm.dot(p - l.p) >= -10.0 * self.tol {
                m |= 1 << i;
            }
        }
        m
    }

    /// Separating-axis test against the open polygon.
    fn blocked(&self, a: Point, b: Point) -> bool {
        let mut axes: Vec<Point> = self.lines.iter().map(|l| l.nrm).collect();
        let d = b - a;
        if d.norm() > 0.0 {
            axes.push(Point::new(-d.y, d.x) * (1.0 / d.norm()));
        }
        for ax in axes {
            let (mut pmin, mut pmax) = (f64::INFINITY, f64::NEG_INFINITY);
            for v in &self.verts {
                let x = ax.dot(*v);
                pmin = pmin.min(x);
                pmax = pmax.max(x);
            }
            let (sa, sb) = (ax.dot(a), ax.dot(b));
            let (smin, smax) = (sa.min(sb), sa.max(sb));
            if smin >= pmax - self.tol || smax <= pmin + self.tol {
                return false;
            }
        }
        true
    }

    fn inside(&self, p: Point) -> bool {
        self.lines.iter().all(|l| l.nrm.dot(p - l.p) < -self.tol)
    }
}

#[derive(PartialEq)]
struct Item(f64, usize);
impl Eq for Item {}
impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

/// `(point, Some(line))` for samples that may slide along a line.
fn waypoints(g: &Geo, center: Point, radius: f64, samples: usize, extra: &[Point]) -> Vec<(Point, Option<usize>)> {
    let n = g.verts.len();
    let mut w: Vec<(Point, Option<usize>)> = extra.iter().map(|&p| (p, None)).collect();
    w.extend(g.verts.iter().map(|&v| (v, None)));
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (g.lines[i], g.lines[j]);
            let det = a.u.cross(b.u);
            if det.abs() < 1e-12 {
                continue;
            }
            let t = (b.p - a.p).cross(b.u) / det;
            let q = a.p + a.u * t;
            if q.dist(center) <= radius {
                w.push((q, None));
            }
        }
    }
    let anchors: Vec<Point> = extra.iter().chain(g.verts.iter()).copied().collect();
    for (i, l) in g.lines.iter().enumerate() {
        for &p in &anchors {
            let f = p - l.nrm * l.nrm.dot(p - l.p);
            w.push((f, Some(i)));
        }
        let foot = center - l.nrm * l.nrm.dot(center - l.p);
        let h = l.nrm.dot(center - l.p).abs();
        if h > radius {
            continue;
        }
        let half = (radius * radius - h * h).sqrt();
        for k in 0..=samples {
            let t = -half + 2.0 * half * k as f64 / samples as f64;
            w.push((foot + l.u * t, Some(i)));
        }
    }
    w.retain(|(p, _)| !g.inside(*p));
    w
}

fn search(g: &Geo, w: &[(Point, Option<usize>)], sources: &[usize]) -> Option<OracleRoute> {
    let m = w.len();
    let n = g.verts.len();
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let masks: Vec<u64> = w.iter().map(|(p, _)| g.mask(*p)).collect();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    for a in 0..m {
        for b in a + 1..m {
            if !g.blocked(w[a].0, w[b].0) {
                let d = w[a].0.dist(w[b].0);
                adj[a].push((b, d));
                adj[b].push((a, d));
            }
        }
    }
    let states = m << n;
    let mut dist = vec![f64::INFINITY; states];
    let mut prev = vec![usize::MAX; states];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        let st = (s << n) | masks[s] as usize;
        dist[st] = 0.0;
        heap.push(Item(0.0, st));
    }
    let mut goal = None;
    while let Some(Item(d, st)) = heap.pop() {
        if d > dist[st] {
            continue;
        }
        let (node, mask) = (st >> n, (st & ((1 << n) - 1)) as u64);
        if mask == full {
            goal = Some(st);
            break;
        }
        for &(nb, len) in &adj[node] {
            let nm = mask | masks[nb];
            let ns = (nb << n) | nm as usize;
            let nd = d + len;
            if nd < dist[ns] {
                dist[ns] = nd;
                prev[ns] = st;
                heap.push(Item(nd, ns));
            }
        }
    }
    let goal = goal?;
    let mut idx = vec![goal >> n];
    let mut st = goal;
    while prev[st] != usize::MAX {
        st = prev[st];
        idx.push(st >> n);
    }
    idx.reverse();
    let mut points: Vec<Point> = idx.iter().map(|&k| w[k].0).collect();
    let lines: Vec<Option<usize>> = idx.iter().map(|&k| w[k].1).collect();
    polish(g, &mut points, &lines, sources.len() > 1);
    let length = points.windows(2).map(|p| p[0].dist(p[1])).sum();
    Some(OracleRoute { length, points })
}

/// Coordinate descent: slide each line sample along its line while the
/// route stays legal and covering.
fn polish(g: &Geo, pts: &mut [Point], lines: &[Option<usize>], free_start: bool) {
    let n = g.verts.len();
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let ok = |pts: &[Point]| {
        pts.iter().fold(0, |m, &p| m | g.mask(p)) == full && pts.windows(2).all(|w| !g.blocked(w[0], w[1]))
    };
    let cost = |pts: &[Point]| pts.windows(2).map(|p| p[0].dist(p[1])).sum::<f64>();
    let scale = g.verts.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut step = scale;
    for _ in 0..2000 {
        let mut moved = false;
        for k in 0..pts.len() {
            if k == 0 && !free_start {
                continue;
            }
            let Some(i) = lines[k] else { continue };
            let u = g.lines[i].u;
            for dir in [1.0, -1.0] {
                let mut trial = pts.to_vec();
                trial[k] = pts[k] + u * (dir * step);
                if cost(&trial) < cost(pts) - 1e-15 && ok(&trial) {
                    pts[k] = trial[k];
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            step *= 0.5;
            if step < 1e-10 * scale {
                break;
            }
        }
    }
}

/// Shortest watchman route from `s`.
pub fn osp_oracle(poly: &ConvexPolygon, s: Point, samples: usize) -> OracleRoute {
    let g = Geo::new(poly);
    let perim: f64 = (0..g.verts.len()).map(|i| g.verts[i].dist(g.verts[(i + 1) % g.verts.len()])).sum();
    let reach = g.verts.iter().map(|v| v.dist(s)).fold(f64::INFINITY, f64::min);
    let radius = reach + perim;
    let w = waypoints(&g, s, radius, samples, &[s]);
    search(&g, &w, &[0]).expect("a covering route always exists")
}

/// Shortest watchman route with a free start.
pub fn ofp_oracle(poly: &ConvexPolygon, samples: usize) -> OracleRoute {
    let g = Geo::new(poly);
    let n = g.verts.len();
    let perim: f64 = (0..n).map(|i| g.verts[i].dist(g.verts[(i + 1) % n])).sum();
    let c = g.verts.iter().fold(Point::new(0.0, 0.0), |a, &v| a + v) * (1.0 / n as f64);
    let r = g.verts.iter().map(|v| v.dist(c)).fold(0.0, f64::max);
    let w = waypoints(&g, c, r + perim, samples, &[]);
    let sources: Vec<usize> = (0..w.len()).collect();
    search(&g, &w, &sources).expect("a covering route always exists")
}
