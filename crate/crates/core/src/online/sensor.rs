//! The planner's only window onto the obstacle.

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point};

/// Opaque vertex label. Labels are stable across observations, so the
/// planner can recognise a vertex it has seen before.
pub type VertexId = usize;

/// What the robot sees from one position: the visible boundary chain,
/// counterclockwise from the left tangency vertex to the right one.
/// Consecutive entries are joined by an obstacle edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub position: Point,
    pub chain: Vec<(VertexId, Point)>,
}

impl Observation {
    pub fn left(&self) -> (VertexId, Point) {
        self.chain[0]
    }

    pub fn right(&self) -> (VertexId, Point) {
        *self.chain.last().expect("an observation sees at least one edge")
    }
}

pub trait Sensor {
    fn observe(&mut self, pos: Point) -> Result<Observation>;

    /// Called for every executed straight move. A simulator uses it to
    /// catch moves through the obstacle.
    fn check_move(&mut self, from: Point, to: Point) -> Result<()>;
}

/// Ground-truth sensor backed by the real polygon. Keeps a log of every
/// observation so runs can be replayed.
#[derive(Debug, Clone)]
pub struct PolygonSensor {
    poly: ConvexPolygon,
    log: Vec<Observation>,
}

impl PolygonSensor {
    pub fn new(poly: ConvexPolygon) -> Self {
        Self { poly, log: Vec::new() }
    }

    pub fn log(&self) -> &[Observation] {
        &self.log
    }

    pub fn into_log(self) -> Vec<Observation> {
        self.log
    }
}

impl Sensor for PolygonSensor {
    fn observe(&mut self, pos: Point) -> Result<Observation> {
        let idx = self.poly.visible_chain(pos)?;
        let obs = Observation { position: pos, chain: idx.into_iter().map(|k| (k, self.poly.vertex(k))).collect() };
        self.log.push(obs.clone());
        Ok(obs)
    }

    fn check_move(&mut self, from: Point, to: Point) -> Result<()> {
        if self.poly.segment_crosses_interior(from, to) {
            return Err(Error::SensorViolation(format!(
                "move ({}, {}) -> ({}, {}) passes through the obstacle",
                from.x, from.y, to.x, to.y
            )));
        }
        Ok(())
    }
}

/// Plays back a recorded log. Any query at a position other than the
/// recorded one means the planner's decisions diverged.
#[derive(Debug, Clone)]
pub struct ReplaySensor {
    log: Vec<Observation>,
    cursor: usize,
}

impl ReplaySensor {
    pub fn new(log: Vec<Observation>) -> Self {
        Self { log, cursor: 0 }
    }

    pub fn exhausted(&self) -> bool {
        self.cursor == self.log.len()
    }
}

impl Sensor for ReplaySensor {
    fn observe(&mut self, pos: Point) -> Result<Observation> {
        let obs = self.log.get(self.cursor).ok_or_else(|| Error::SensorViolation("replay log exhausted".into()))?;
        if obs.position != pos {
            return Err(Error::SensorViolation(format!(
                "replay diverged at query {}: ({}, {}) vs recorded ({}, {})",
                self.cursor, pos.x, pos.y, obs.position.x, obs.position.y
            )));
        }
        self.cursor += 1;
        Ok(obs.clone())
    }

    fn check_move(&mut self, _from: Point, _to: Point) -> Result<()> {
        Ok(())
    }
}
