//! JSON file formats for instances and routes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexPolygon, Point, Polyline};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(#[from] crate::Error),
}

/// `{"polygon": [[x, y], ...], "start": [x, y], "label": "...", "seed": 42}`.
/// The start may be omitted for floating-start problems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub polygon: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A validated instance file. The polygon is normalized to counterclockwise
/// order and the start, if any, checked to lie outside the obstacle.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedInstance {
    pub polygon: ConvexPolygon,
    pub start: Option<Point>,
    pub label: Option<String>,
    pub seed: Option<u64>,
}

impl InstanceFile {
    pub fn validate(&self) -> Result<LoadedInstance, crate::Error> {
        let polygon = ConvexPolygon::new(self.polygon.iter().map(|&p| p.into()).collect())?;
        let start = self.start.map(Point::from);
        if let Some(s) = start {
            polygon.check_outside(s)?;
        }
        Ok(LoadedInstance { polygon, start, label: self.label.clone(), seed: self.seed })
    }

    pub fn from_parts(polygon: &ConvexPolygon, start: Option<Point>, label: Option<String>, seed: Option<u64>) -> Self {
        Self {
            polygon: polygon.vertices().iter().map(|&p| p.into()).collect(),
            start: start.map(Into::into),
            label,
            seed,
        }
    }
}

pub fn parse_instance(text: &str) -> Result<LoadedInstance, LoadError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    Ok(file.validate()?)
}

pub fn load_instance(path: &Path) -> Result<LoadedInstance, LoadError> {
    let text = read(path)?;
    parse_instance(&text)
}

/// `{"points": [[x, y], ...], "length": L, "type": "...", "phases": [[a0, a1], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteFile {
    pub points: Vec<[f64; 2]>,
    pub length: f64,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub phases: Vec<[f64; 2]>,
}

impl RouteFile {
    pub fn new(path: &Polyline, kind: impl Into<String>, phases: Vec<[f64; 2]>) -> Self {
        Self {
            points: path.points().iter().map(|&p| p.into()).collect(),
            length: path.length(),
            kind: kind.into(),
            phases,
        }
    }

    pub fn polyline(&self) -> Polyline {
        Polyline::new(self.points.iter().map(|&p| p.into()).collect())
    }
}

pub fn load_route(path: &Path) -> Result<RouteFile, LoadError> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })
}
