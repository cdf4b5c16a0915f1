use thiserror::Error;

use crate::geometry::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("singular matrix: pivot {pivot:e} in column {column} is below the relative threshold")]
    SingularMatrix { column: usize, pivot: f64 },

    #[error("malformed linear system: {0}")]
    MalformedSystem(String),

    #[error("invalid geometry: {}", format_violations(.0))]
    InvalidGeometry(Vec<Violation>),

    #[error("degenerate edge {edge}: endpoints coincide")]
    DegenerateEdge { edge: usize },

    #[error("degenerate triangle: signed area {area:e}")]
    DegenerateTriangle { area: f64 },

    #[error("point lies outside the domain")]
    OutsideDomain,

    #[error("point lies on the boundary; the closed-form oracle is undefined there")]
    OnBoundary,

    #[error("quadrilateral is not convex")]
    NotConvex,

    #[error("no reference frame satisfies the sign pattern (worst entry {worst:e} at row {row}, vertex {vertex})")]
    FrameNotFound {
        row: usize,
        vertex: usize,
        worst: f64,
    },

    #[error("degenerate frame: determinant {det:e}")]
    DegenerateFrame { det: f64 },
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
