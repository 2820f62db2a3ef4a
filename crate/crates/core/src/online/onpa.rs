//! The online planner. Phase I and II are doubling searches that shrink the
//! scope until it closes; phase III walks around the remaining unseen part
//! and, once the whole silhouette is known, finishes with an offline route.

use std::f64::consts::FRAC_PI_2;

use super::knowledge::Knowledge;
use super::scope::{classify_scope, ScopeKind};
use super::sensor::{PolygonSensor, Sensor};
use super::spiral::{TurningPoints, STOP_TOLERANCE};
use super::{OnlineTrace, Phase, TraceEvent, TraceRecord};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point, Polyline};
use crate::offline::osp_covering;

/// Runs the planner from `s` against the ground-truth polygon.
pub fn onpa_on_polygon(s: Point, poly: &ConvexPolygon) -> Result<OnlineTrace> {
    onpa(s, &mut PolygonSensor::new(poly.clone()))
}

/// Runs the planner from `s`, learning the obstacle only through `sensor`.
pub fn onpa<S: Sensor>(s: Point, sensor: &mut S) -> Result<OnlineTrace> {
    let mut run = Run::new(s, sensor)?;
    run.phase_one()?;
    let mark_one = run.arclen;
    run.phase = Phase::II;
    run.phase_two()?;
    let mark_two = run.arclen;
    run.phase = Phase::III;
    run.phase_three()?;
    let terminated = run.finished();
    if terminated {
        run.record(TraceEvent::Finished);
    }
    Ok(OnlineTrace {
        path: Polyline::new(run.pts),
        phase_marks: [mark_one, mark_two],
        sightings: run.know.sightings().cloned().collect(),
        terminated,
        records: run.records,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    PhaseOne,
    PhaseTwo,
    Closed,
    Finished,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

const MAX_PERPENDICULARS: usize = 3;
const MAX_PHASE_THREE_STEPS: usize = 4096;
const MAX_DETOURS: usize = 256;

struct Run<'a, S: Sensor> {
    sensor: &'a mut S,
    know: Knowledge,
    pts: Vec<Point>,
    arclen: f64,
    phase: Phase,
    records: Vec<TraceRecord>,
    start: Point,
}

/// Whether `stop` fires with knowledge `know` at `p`, the path so far being `pts`.
fn fired(stop: Stop, know: &Knowledge, p: Point, pts: &mut Vec<Point>) -> bool {
    if know.closed() {
        pts.push(p);
        let done = know.known_half_planes_visited(pts);
        pts.pop();
        if done {
            return true;
        }
    }
    match stop {
        Stop::PhaseOne => classify_scope(know, p).is_ok_and(|sc| sc.sigma() < FRAC_PI_2 || sc.kind == ScopeKind::Cs),
        Stop::PhaseTwo => classify_scope(know, p).is_ok_and(|sc| sc.kind == ScopeKind::Cs),
        Stop::Closed => know.closed(),
        Stop::Finished => false,
    }
}

/// Initial doubling step: the smaller of two distances, unless it vanishes.
fn initial_step(a: f64, b: f64, fallback: f64) -> f64 {
    let (lo, hi) = (a.min(b), a.max(b));
    if lo > 1e-6 * hi {
        lo
    } else if hi > 0.0 {
        hi
    } else {
        fallback
    }
}

impl<'a, S: Sensor> Run<'a, S> {
    fn new(s: Point, sensor: &'a mut S) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::NonFinite);
        }
        let mut know = Knowledge::new();
        know.observe(&sensor.observe(s)?, 0.0);
        let mut run = Run { sensor, know, pts: vec![s], arclen: 0.0, phase: Phase::I, records: Vec::new(), start: s };
        run.record(TraceEvent::Start);
        Ok(run)
    }

    fn pos(&self) -> Point {
        *self.pts.last().unwrap()
    }

    fn scale(&self) -> f64 {
        let reach = self.know.sightings().map(|v| v.point.dist(self.start)).fold(0.0, f64::max);
        self.know.diameter().max(reach)
    }

    fn tol(&self) -> f64 {
        1e-9 * self.scale()
    }

    fn guard(&self) -> f64 {
        1e4 * self.scale()
    }

    fn record(&mut self, event: TraceEvent) {
        self.records.push(TraceRecord { arclen: self.arclen, point: self.pos(), phase: self.phase, event });
    }

    fn finished(&mut self) -> bool {
        let p = self.pos();
        fired(Stop::Finished, &self.know, p, &mut self.pts)
    }

    /// Straight move towards `q`, observing continuously. Stops at the first
    /// point where `stop` fires and returns whether it did.
    fn step_to(&mut self, q: Point, stop: Stop) -> Result<bool> {
        let a = self.pos();
        let len = a.dist(q);
        if len == 0.0 {
            return Ok(false);
        }
        if self.know.blocked(a, q) {
            return Err(Error::SensorViolation(format!(
                "planned move ({}, {}) -> ({}, {}) crosses the known obstacle",
                a.x, a.y, q.x, q.y
            )));
        }
        let spacing = self.know.diameter().max(len) / 32.0;
        let samples = ((len / spacing).ceil() as usize).clamp(4, 64);
        let mut prev = 0.0;
        for k in 1..=samples {
            let t = k as f64 / samples as f64;
            let p = a.lerp(q, t);
            let before = self.know.clone();
            let obs = self.sensor.observe(p)?;
            self.know.observe(&obs, self.arclen + len * t);
            if !fired(stop, &self.know, p, &mut self.pts) {
                prev = t;
                continue;
            }
            let (mut lo, mut hi) = (prev, t);
            while (hi - lo) * len > STOP_TOLERANCE && hi - lo > f64::EPSILON {
                let mid = 0.5 * (lo + hi);
                let pm = a.lerp(q, mid);
                let mut trial = before.clone();
                trial.observe(&self.sensor.observe(pm)?, self.arclen + len * mid);
                if fired(stop, &trial, pm, &mut self.pts) {
                    hi = mid;
                    self.know = trial;
                } else {
                    lo = mid;
                }
            }
            let end = a.lerp(q, hi);
            self.finish_move(a, end)?;
            return Ok(true);
        }
        self.finish_move(a, q)?;
        Ok(false)
    }

    fn finish_move(&mut self, a: Point, b: Point) -> Result<()> {
        self.sensor.check_move(a, b)?;
        self.arclen += a.dist(b);
        self.pts.push(b);
        let bound = self.guard();
        if self.arclen > bound {
            return Err(Error::NonTermination { turn: self.arclen, bound });
        }
        Ok(())
    }

    /// Goes to `target`, wrapping around the obstacle through tangent
    /// vertices when the direct move is blocked.
    fn navigate(&mut self, target: Point, stop: Stop) -> Result<bool> {
        let mut side = None;
        for _ in 0..MAX_DETOURS {
            let a = self.pos();
            if a.dist(target) <= self.tol() {
                return Ok(false);
            }
            if !self.know.blocked(a, target) {
                return self.step_to(target, stop);
            }
            let obs = self.know.last_observation().expect("observed at every position");
            let (l, r) = (obs.left().1, obs.right().1);
            let s = *side.get_or_insert_with(|| {
                if a.dist(l) + l.dist(target) <= a.dist(r) + r.dist(target) {
                    Side::Left
                } else {
                    Side::Right
                }
            });
            let v = if s == Side::Left { l } else { r };
            let fired = self.step_to(v, stop)?;
            self.record(TraceEvent::Detour);
            if fired {
                return Ok(true);
            }
        }
        Err(Error::NonTermination { turn: self.arclen, bound: self.guard() })
    }

    /// Doubling search from the current position along `axis`.
    fn spiral(&mut self, axis: Point, step: f64, stop: Stop) -> Result<()> {
        let origin = self.pos();
        if fired(stop, &self.know, origin, &mut self.pts) {
            return Ok(());
        }
        let mut tp = TurningPoints::new(origin, axis, step);
        loop {
            let d = tp.next_distance();
            let bound = self.guard();
            if d > bound {
                return Err(Error::NonTermination { turn: d, bound });
            }
            let target = tp.next().unwrap();
            if self.navigate(target, stop)? {
                self.record(TraceEvent::Stop);
                return Ok(());
            }
            self.record(TraceEvent::Turn);
        }
    }

    /// Wide scope: search parallel to the chord between the extreme vertices,
    /// then return to the start.
    fn phase_one(&mut self) -> Result<()> {
        let s = self.start;
        let sc = classify_scope(&self.know, s)?;
        if sc.kind == ScopeKind::Cs || sc.sigma() < FRAC_PI_2 {
            return Ok(());
        }
        let (vr, vl) = sc.m;
        let u = (vl - vr).normalized().ok_or(Error::DegenerateLine)?;
        let foot = vr + u * u.dot(s - vr);
        let (dl, dr) = (foot.dist(vl), foot.dist(vr));
        let toward = if dl <= dr { vl } else { vr };
        let axis = if u.dot(toward - foot) >= 0.0 { u } else { -u };
        self.spiral(axis, initial_step(dl, dr, vl.dist(vr)), Stop::PhaseOne)?;
        if !self.finished() && self.pos() != s {
            self.navigate(s, Stop::Finished)?;
            self.record(TraceEvent::Return);
        }
        Ok(())
    }

    /// Opening scope: search perpendicular to the scope's bisector until it
    /// closes.
    fn phase_two(&mut self) -> Result<()> {
        if self.finished() {
            return Ok(());
        }
        let p = self.pos();
        let sc = classify_scope(&self.know, p)?;
        if sc.kind == ScopeKind::Cs {
            return Ok(());
        }
        let (or, ol) = sc.q_offsets;
        let off = if or.abs() <= ol.abs() { or } else { ol };
        let axis = if off >= 0.0 { sc.q_axis } else { -sc.q_axis };
        self.spiral(axis, initial_step(or.abs(), ol.abs(), sc.q_hat.max(sc.ell)), Stop::PhaseTwo)
    }

    /// Closing scope: reach the chord's line if possible, then walk around
    /// the unseen part from the nearer extreme vertex until the silhouette
    /// closes, and finish offline.
    fn phase_three(&mut self) -> Result<()> {
        let mut perpendiculars = 0;
        let mut side = None;
        for _ in 0..MAX_PHASE_THREE_STEPS {
            if self.finished() {
                return Ok(());
            }
            if self.know.closed() {
                return self.complete();
            }
            let p = self.pos();
            let sc = classify_scope(&self.know, p)?;
            let (vr, vl) = sc.m;
            if side.is_none() && perpendiculars < MAX_PERPENDICULARS {
                if let Some(u) = (vl - vr).normalized() {
                    let foot = vr + u * u.dot(p - vr);
                    perpendiculars += 1;
                    if p.dist(foot) > self.tol() && !self.know.blocked(p, foot) {
                        self.step_to(foot, Stop::Closed)?;
                        self.record(TraceEvent::Perpendicular);
                        continue;
                    }
                }
            }
            let s = *side.get_or_insert(if p.dist(vr) <= p.dist(vl) { Side::Right } else { Side::Left });
            let (id, e) = match s {
                Side::Right => (sc.los_right.vertex_id, vr),
                Side::Left => (sc.los_left.vertex_id, vl),
            };
            if p.dist(e) <= self.tol() {
                let next = match s {
                    Side::Right => self.know.successor(id),
                    Side::Left => self.know.predecessor(id),
                };
                let next = next.ok_or_else(|| Error::SensorViolation(format!("vertex {id} seen without its edges")))?;
                let q = self.know.point(next);
                self.step_to(q, Stop::Closed)?;
                self.record(TraceEvent::Boundary);
            } else {
                self.navigate(e, Stop::Closed)?;
                self.record(TraceEvent::Detour);
            }
        }
        Err(Error::NonTermination { turn: self.arclen, bound: self.guard() })
    }

    /// The whole obstacle is known: visit the remaining half-planes along an
    /// optimal offline route.
    fn complete(&mut self) -> Result<()> {
        let (poly, _) = self.know.known_polygon().ok_or(Error::NoRoute)?;
        let tol = 1e3 * poly.eps();
        let already = self.pts.iter().fold(0, |m, &p| m | poly.half_plane_mask(p, tol));
        let route = osp_covering(self.pos(), &poly, already)?;
        for &q in &route.path.points()[1..] {
            if self.step_to(q, Stop::Finished)? {
                break;
            }
        }
        self.record(TraceEvent::Completion);
        Ok(())
    }
}
