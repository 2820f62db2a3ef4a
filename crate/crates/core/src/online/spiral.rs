//! One-dimensional doubling search ("cow path"): alternate excursions along
//! a line, doubling the turning distance each time.

use crate::error::{Error, Result};
use crate::geometry::{Point, Polyline};

/// Turning points `start + axis * (+1, -2, +4, -8, ...) * initial_step`.
#[derive(Debug, Clone)]
pub struct TurningPoints {
    start: Point,
    axis: Point,
    step: f64,
    k: u32,
}

impl TurningPoints {
    pub fn new(start: Point, axis: Point, initial_step: f64) -> Self {
        Self { start, axis, step: initial_step, k: 0 }
    }

    /// Turning distance of the next excursion.
    pub fn next_distance(&self) -> f64 {
        self.step * 2f64.powi(self.k as i32)
    }

    pub fn turns_taken(&self) -> u32 {
        self.k
    }
}

impl Iterator for TurningPoints {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let d = self.next_distance();
        let sign = if self.k.is_multiple_of(2) { 1.0 } else { -1.0 };
        self.k += 1;
        Some(self.start + self.axis * (sign * d))
    }
}

#[derive(Debug, Clone)]
pub struct SpiralOutcome {
    pub path: Polyline,
    /// Where the predicate first fired.
    pub stop: Point,
    /// Turning distances of the completed excursions.
    pub turns: Vec<f64>,
}

/// Arc-length resolution when locating the first point where a predicate fires.
pub const STOP_TOLERANCE: f64 = 1e-9;

/// First parameter in `[0, 1]` along `a -> b` where `fired` holds, located by
/// sampling and then bisection. `fired` is assumed to stay true once it
/// becomes true within one sample interval.
pub fn first_firing(a: Point, b: Point, samples: usize, mut fired: impl FnMut(Point) -> bool) -> Option<f64> {
    let len = a.dist(b);
    let mut prev = 0.0;
    for k in 1..=samples.max(1) {
        let t = k as f64 / samples.max(1) as f64;
        if fired(a.lerp(b, t)) {
            let (mut lo, mut hi) = (prev, t);
            while (hi - lo) * len > STOP_TOLERANCE && hi - lo > f64::EPSILON {
                let mid = 0.5 * (lo + hi);
                if fired(a.lerp(b, mid)) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(hi);
        }
        prev = t;
    }
    None
}

/// Doubling search from `start` along `axis` (first excursion towards
/// `+axis`) until `stop` fires. The predicate is checked at `start` first,
/// then continuously along every leg. Gives up with `NonTermination` once
/// a turning distance would exceed `max_turn`.
pub fn spiral_search_1d(
    start: Point,
    axis: Point,
    initial_step: f64,
    max_turn: f64,
    mut stop: impl FnMut(Point) -> bool,
) -> Result<SpiralOutcome> {
    if !initial_step.is_finite() || initial_step <= 0.0 {
        return Err(Error::InvalidDims(format!("initial step must be positive, got {initial_step}")));
    }
    let axis = axis.normalized().ok_or(Error::DegenerateLine)?;
    let mut path = Polyline::single(start);
    let mut turns = Vec::new();
    if stop(start) {
        return Ok(SpiralOutcome { path, stop: start, turns });
    }
    let mut tp = TurningPoints::new(start, axis, initial_step);
    loop {
        let d = tp.next_distance();
        if d > max_turn {
            return Err(Error::NonTermination { turn: d, bound: max_turn });
        }
        let target = tp.next().unwrap();
        let from = path.end();
        let samples = ((from.dist(target) / initial_step).ceil() as usize * 8).clamp(16, 4096);
        if let Some(t) = first_firing(from, target, samples, &mut stop) {
            let p = from.lerp(target, t);
            path.push(p);
            return Ok(SpiralOutcome { path, stop: p, turns });
        }
        path.push(target);
        turns.push(d);
    }
}
