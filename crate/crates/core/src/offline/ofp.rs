use super::engine::Engine;
use super::{OfflineRoute, PathType, Waypoint};
use crate::geometry::{ConvexPolygon, Direction};

/// Shortest watchman route with a free starting point.
///
/// Candidates follow a counterclockwise run of the boundary from `v_a` to
/// `v_b`; the edges the run does not cover form one contiguous block, which
/// is split between a straight lead-in to `v_a` and a straight lead-out from
/// `v_b`, each ending at the projection into its share of half-planes.
pub fn ofp(poly: &ConvexPolygon) -> OfflineRoute {
    let mut eng = Engine::new(poly);
    let n = eng.n;
    let full = eng.full;
    // (cost, a, steps, split)
    let mut best: Option<(f64, usize, usize, usize)> = None;
    for a in 0..n {
        let mut b = a;
        let mut walk = 0.0;
        let mut covered = eng.vmask(a);
        for steps in 0..n {
            if steps > 0 {
                let nb = Direction::Ccw.step(b, n);
                walk += poly.vertex(b).dist(poly.vertex(nb));
                b = nb;
                covered |= eng.vmask(b);
            }
            if best.is_some_and(|(c, ..)| walk >= c) {
                break;
            }
            // uncovered edges, in order b+1, b+2, ...
            let rest: Vec<usize> = (1..=n).map(|k| (b + k) % n).filter(|&e| covered & (1 << e) == 0).collect();
            for split in 0..=rest.len() {
                let out_mask = rest[..split].iter().fold(0, |m, &e| m | (1u64 << e));
                let in_mask = rest[split..].iter().fold(0, |m, &e| m | (1u64 << e));
                let (Some(lead_out), Some(lead_in)) =
                    (eng.end_from_vertex(b, out_mask), eng.end_from_vertex(a, in_mask))
                else {
                    continue;
                };
                let cost = lead_in.cost + walk + lead_out.cost;
                if best.is_none_or(|(c, ..)| cost < c) {
                    best = Some((cost, a, steps, split));
                }
            }
            if covered == full {
                break;
            }
        }
    }
    let (_, a, steps, split) = best.expect("walking the whole boundary always covers every half-plane");

    let mut covered = eng.vmask(a);
    let walked: Vec<usize> = eng.walk(a, Direction::Ccw, steps).collect();
    for &k in &walked {
        covered |= eng.vmask(k);
    }
    let b = walked.last().copied().unwrap_or(a);
    let rest: Vec<usize> = (1..=n).map(|k| (b + k) % n).filter(|&e| covered & (1 << e) == 0).collect();
    let out_mask = rest[..split].iter().fold(0, |m, &e| m | (1u64 << e));
    let in_mask = rest[split..].iter().fold(0, |m, &e| m | (1u64 << e));
    let lead_in = eng.end_from_vertex(a, in_mask).unwrap();
    let lead_out = eng.end_from_vertex(b, out_mask).unwrap();

    let mut pts = Vec::new();
    let mut wps = Vec::new();
    if let Some(wp) = lead_in.wp {
        pts.push(lead_in.point);
        wps.push(wp);
    }
    pts.push(poly.vertex(a));
    wps.push(Waypoint::Vertex(a));
    for k in walked {
        pts.push(poly.vertex(k));
        wps.push(Waypoint::Vertex(k));
    }
    if let Some(wp) = lead_out.wp {
        pts.push(lead_out.point);
        wps.push(wp);
    }
    OfflineRoute::build(poly, pts, wps, PathType::FloatingPerimeter, false)
}
