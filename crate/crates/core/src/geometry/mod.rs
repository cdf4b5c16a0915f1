//! Geometric primitives: points, the three supported cell shapes, point
//! classification and validity checks.
//!
//! All tolerances are relative to the geometry diameter (largest pairwise
//! vertex distance), so predicates behave the same at every scale.

mod hex;
mod nodes;
mod quad;

use std::fmt;

pub use hex::{FacePlane, Hexahedron, HEX_EDGES, HEX_FACES, HEX_FACE_PAIRS, REFERENCE_SIGNS};
pub use nodes::NodeSet1D;
pub use quad::Quadrilateral;

pub type Point2 = nalgebra::Vector2<f64>;
pub type Point3 = nalgebra::Vector3<f64>;

/// Default classification tolerance, relative to the diameter.
pub const CLASSIFY_REL_TOL: f64 = 1e-10;
/// Planarity and convexity slack for hexahedra, relative to the diameter.
pub const HEX_SHAPE_REL_TOL: f64 = 1e-9;
/// Vertices closer than this (relative to the diameter) are coincident.
pub const COINCIDENT_REL_TOL: f64 = 1e-12;
/// Triangles with `|area| <= DEGENERATE_AREA_REL_TOL * diam^2` are degenerate.
pub const DEGENERATE_AREA_REL_TOL: f64 = 1e-13;

/// Signed area of the triangle `(a, b, c)`: positive when counterclockwise.
pub fn signed_area(a: &Point2, b: &Point2, c: &Point2) -> f64 {
    0.5 * cross2(&(b - a), &(c - a))
}

/// The planar cross product `x1 y2 - x2 y1`.
pub fn cross2(x: &Point2, y: &Point2) -> f64 {
    x.x * y.y - x.y * y.x
}

/// Largest pairwise distance between the given points.
pub fn diameter<const D: usize>(points: &[nalgebra::SVector<f64, D>]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    d
}

/// Where a query point sits relative to a cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointLocation {
    Interior,
    /// On edge `edge` (from vertex `edge` to vertex `edge + 1`) at parameter `t`.
    OnEdge {
        edge: usize,
        t: f64,
    },
    /// On hexahedron face `face` (an index into [`HEX_FACES`]).
    OnFace(usize),
    AtVertex(usize),
    Exterior,
}

impl PointLocation {
    pub fn is_inside(&self) -> bool {
        !matches!(self, PointLocation::Exterior)
    }

    pub fn is_interior(&self) -> bool {
        matches!(self, PointLocation::Interior)
    }
}

/// A single failed validity check.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    WrongVertexCount {
        expected: usize,
        found: usize,
    },
    NonFinite {
        vertex: usize,
    },
    CoincidentVertices {
        a: usize,
        b: usize,
    },
    CollinearCorner {
        vertex: usize,
    },
    SelfIntersecting {
        edge_a: usize,
        edge_b: usize,
    },
    TooFewNodes {
        count: usize,
    },
    NodesNotIncreasing {
        index: usize,
    },
    NonPlanarFace {
        face: usize,
        deviation: f64,
    },
    FaceNotSimple {
        face: usize,
    },
    NotConvex {
        face: usize,
        vertex: usize,
        excess: f64,
    },
    OppositeFacesNotSeparated {
        face: usize,
        vertex: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongVertexCount { expected, found } => {
                write!(f, "expected {expected} vertices, found {found}")
            }
            Violation::NonFinite { vertex } => write!(f, "vertex {vertex} is not finite"),
            Violation::CoincidentVertices { a, b } => {
                write!(f, "vertices {a} and {b} coincide")
            }
            Violation::CollinearCorner { vertex } => {
                write!(f, "corner at vertex {vertex} is collinear")
            }
            Violation::SelfIntersecting { edge_a, edge_b } => {
                write!(f, "edges {edge_a} and {edge_b} intersect")
            }
            Violation::TooFewNodes { count } => {
                write!(f, "need at least 3 nodes, found {count}")
            }
            Violation::NodesNotIncreasing { index } => {
                write!(
                    f,
                    "node {index} is not strictly greater than node {}",
                    index - 1
                )
            }
            Violation::NonPlanarFace { face, deviation } => {
                write!(f, "face {face} is not planar (deviation {deviation:e})")
            }
            Violation::FaceNotSimple { face } => {
                write!(f, "face {face} is not a simple quadrilateral")
            }
            Violation::NotConvex {
                face,
                vertex,
                excess,
            } => write!(
                f,
                "vertex {vertex} lies outside the supporting plane of face {face} by {excess:e}"
            ),
            Violation::OppositeFacesNotSeparated { face, vertex } => write!(
                f,
                "vertex {vertex} of the opposite face touches the plane of face {face}"
            ),
        }
    }
}

/// Raw, unvalidated geometry as read from input.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometryInput {
    Interval(Vec<f64>),
    Quad(Vec<Point2>),
    Hex(Vec<Point3>),
}

/// Outcome of [`validate_geometry`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// `Some` for quadrilaterals that passed validation.
    pub convex: Option<bool>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every type invariant of the geometry and reports each violation.
pub fn validate_geometry(input: &GeometryInput) -> ValidationReport {
    match input {
        GeometryInput::Interval(nodes) => ValidationReport {
            violations: nodes::node_violations(nodes),
            convex: None,
        },
        GeometryInput::Quad(vertices) => {
            let Ok(verts) = <[Point2; 4]>::try_from(vertices.as_slice()) else {
                return ValidationReport {
                    violations: vec![Violation::WrongVertexCount {
                        expected: 4,
                        found: vertices.len(),
                    }],
                    convex: None,
                };
            };
            let violations = quad::quad_violations(&verts);
            let convex = violations
                .is_empty()
                .then(|| quad::corner_areas_ccw(&verts).iter().all(|a| *a > 0.0));
            ValidationReport { violations, convex }
        }
        GeometryInput::Hex(vertices) => {
            let Ok(verts) = <[Point3; 8]>::try_from(vertices.as_slice()) else {
                return ValidationReport {
                    violations: vec![Violation::WrongVertexCount {
                        expected: 8,
                        found: vertices.len(),
                    }],
                    convex: None,
                };
            };
            ValidationReport {
                violations: hex::hex_violations(&verts),
                convex: None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn signed_area_examples() {
        let o = Point2::new(0.0, 0.0);
        let ex = Point2::new(1.0, 0.0);
        let ey = Point2::new(0.0, 1.0);
        assert_eq!(signed_area(&o, &ex, &ey), 0.5);
        assert_eq!(signed_area(&o, &ey, &ex), -0.5);
        assert_eq!(
            signed_area(&o, &Point2::new(1.0, 1.0), &Point2::new(2.0, 2.0)),
            0.0
        );
    }

    #[test]
    fn validate_example_quads() {
        let conv = validate_geometry(&GeometryInput::Quad(builtin::conv_quad_vertices().to_vec()));
        assert!(conv.is_ok());
        assert_eq!(conv.convex, Some(true));

        let nonconv = validate_geometry(&GeometryInput::Quad(
            builtin::nonconv_quad_vertices().to_vec(),
        ));
        assert!(nonconv.is_ok());
        assert_eq!(nonconv.convex, Some(false));
    }

    #[test]
    fn validate_reports_wrong_counts() {
        let r = validate_geometry(&GeometryInput::Quad(vec![Point2::zeros(); 3]));
        assert_eq!(
            r.violations,
            vec![Violation::WrongVertexCount {
                expected: 4,
                found: 3
            }]
        );
        let r = validate_geometry(&GeometryInput::Hex(vec![Point3::zeros(); 7]));
        assert!(!r.is_ok());
    }

    #[test]
    fn validate_hex_off_plane_vertex() {
        let mut verts = builtin::conv_hex_vertices();
        // v_0 is shared by faces 0, 2 and 4; pushing it along x bends faces 0 and 2 but
        // keeps it in the plane z = 1 of face 4.
        verts[0].x += 1.0;
        let r = validate_geometry(&GeometryInput::Hex(verts.to_vec()));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NonPlanarFace { face: 2, .. })));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NonPlanarFace { face: 0, .. })));
        assert!(!r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NonPlanarFace { face: 4, .. })));
    }

    #[test]
    fn validate_interval() {
        let r = validate_geometry(&GeometryInput::Interval(vec![0.0, 0.5, 0.5, 1.0]));
        assert_eq!(
            r.violations,
            vec![Violation::NodesNotIncreasing { index: 2 }]
        );
        let r = validate_geometry(&GeometryInput::Interval(vec![0.0, 1.0]));
        assert_eq!(r.violations, vec![Violation::TooFewNodes { count: 2 }]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn pt() -> impl Strategy<Value = Point2> {
            (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(x, y)| Point2::new(x, y))
        }

        proptest! {
            #[test]
            fn signed_area_translation_invariant(a in pt(), b in pt(), c in pt(), t in pt()) {
                let scale = [a, b, c].iter().map(|p| p.amax()).fold(1.0f64, f64::max)
                    .max(t.amax());
                let base = signed_area(&a, &b, &c);
                let moved = signed_area(&(a + t), &(b + t), &(c + t));
                prop_assert!((base - moved).abs() <= 1e-12 * scale * scale);
            }

            #[test]
            fn signed_area_antisymmetric(a in pt(), b in pt(), c in pt()) {
                let scale = [a, b, c].iter().map(|p| p.amax()).fold(1.0f64, f64::max);
                prop_assert!(
                    (signed_area(&a, &b, &c) + signed_area(&b, &a, &c)).abs() <= 1e-12 * scale * scale
                );
            }
        }
    }
}
