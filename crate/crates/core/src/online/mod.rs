//! Online exploration: the obstacle is unknown and revealed only through a
//! sensor as the robot moves.

pub mod knowledge;
mod onpa;
pub mod scope;
pub mod sensor;
pub mod spiral;

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::geometry::{Point, Polyline};

pub use knowledge::{Knowledge, Sighting};
pub use onpa::{onpa, onpa_on_polygon};
pub use scope::{classify_scope, ScopeKind, ScopeState};
pub use sensor::{Observation, PolygonSensor, ReplaySensor, Sensor, VertexId};
pub use spiral::{spiral_search_1d, SpiralOutcome, TurningPoints};

/// `(36 sqrt(2 - sqrt 2) + 21 pi) / (4 - 2 sqrt 2)`: the cost of the scope
/// phases relative to the distance bound.
pub fn scope_phase_constant() -> f64 {
    (36.0 * (2.0 - SQRT_2).sqrt() + 21.0 * PI) / (4.0 - 2.0 * SQRT_2)
}

/// Competitive ratio guaranteed for the online planner.
pub fn competitive_bound() -> f64 {
    10.0 + scope_phase_constant()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    I,
    II,
    III,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::I => "I",
            Phase::II => "II",
            Phase::III => "III",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceEvent {
    Start,
    Turn,
    Stop,
    Return,
    Detour,
    Boundary,
    Perpendicular,
    Completion,
    Finished,
}

/// One waypoint of an online run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRecord {
    pub arclen: f64,
    pub point: Point,
    pub phase: Phase,
    pub event: TraceEvent,
}

#[derive(Debug, Clone)]
pub struct OnlineTrace {
    pub path: Polyline,
    /// Arc length at which phases II and III begin.
    pub phase_marks: [f64; 2],
    pub sightings: Vec<Sighting>,
    /// The planner stopped because it had certified a watchman route.
    pub terminated: bool,
    pub records: Vec<TraceRecord>,
}

impl OnlineTrace {
    pub fn length(&self) -> f64 {
        self.path.length()
    }

    /// Arc-length interval `[from, to]` spent in `phase`.
    pub fn phase_range(&self, phase: Phase) -> (f64, f64) {
        let total = self.length();
        match phase {
            Phase::I => (0.0, self.phase_marks[0]),
            Phase::II => (self.phase_marks[0], self.phase_marks[1]),
            Phase::III => (self.phase_marks[1], total),
        }
    }

    pub fn phase_length(&self, phase: Phase) -> f64 {
        let (a, b) = self.phase_range(phase);
        b - a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_value() {
        assert!((competitive_bound() - 89.82999).abs() < 1e-5);
        assert!((scope_phase_constant() - 79.82999).abs() < 1e-5);
    }
}
