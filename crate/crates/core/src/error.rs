use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not strictly convex at vertex {0}")]
    NotConvex(usize),
    #[error("vertices {0} and {1} coincide")]
    DegenerateVertex(usize, usize),
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("point ({0}, {1}) lies inside the obstacle")]
    PointInsideObstacle(f64, f64),
    #[error("line direction is degenerate")]
    DegenerateLine,
    #[error("edge index {index} out of range for {len} edges")]
    EdgeIndex { index: usize, len: usize },
    #[error("reflection is geometrically infeasible")]
    Infeasible,
    #[error("need at least two distinct sighted vertices, have {0}")]
    InsufficientSightings(usize),
    #[error("search did not terminate: turning distance {turn} exceeded bound {bound}")]
    NonTermination { turn: f64, bound: f64 },
    #[error("planner used geometry it has not seen: {0}")]
    SensorViolation(String),
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("polygon generation failed after {0} attempts")]
    GenerationFailure(usize),
    #[error("no feasible route found")]
    NoRoute,
}
