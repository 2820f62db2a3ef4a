//! Watchman routes outside a convex polygonal obstacle.
//!
//! The crate is split the same way the problem is:
//!
//! - [`geometry`]: planar primitives, the visibility model of a convex
//!   obstacle and shortest obstacle-avoiding "reaching" paths.
//! - [`offline`]: optimal routes when the obstacle is known in advance, from a
//!   fixed start ([`offline::osp`]) or a free start ([`offline::ofp`]).
//! - [`online`]: the online exploration planner, which only learns the
//!   obstacle through a simulated sensor.
//! - [`harness`]: instance generation, coverage checks, competitive-ratio
//!   metrics and batch evaluation.
//! - [`io`] and [`svg`]: file formats used by the command-line tool.

pub mod error;
pub mod exec;
pub mod geometry;
pub mod harness;
pub mod io;
pub mod offline;
pub mod online;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{ConvexPolygon, HalfPlane, Point, Polyline, Tangency};
