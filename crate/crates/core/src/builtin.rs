//! Reference geometries compiled into the library.

use crate::geometry::{Hexahedron, Point2, Point3, Quadrilateral};

/// The biunit square `[-1, 1]^2`.
pub fn biunit_square_vertices() -> [Point2; 4] {
    [
        Point2::new(-1.0, -1.0),
        Point2::new(1.0, -1.0),
        Point2::new(1.0, 1.0),
        Point2::new(-1.0, 1.0),
    ]
}

/// Convex quadrilateral `(0,0), (1,0), (1/2,4), (0,2)`.
pub fn conv_quad_vertices() -> [Point2; 4] {
    [
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(0.5, 4.0),
        Point2::new(0.0, 2.0),
    ]
}

/// Nonconvex quadrilateral `(0,0), (2,0), (1,4), (1,2)` with a reflex
/// vertex at `(1,2)`.
pub fn nonconv_quad_vertices() -> [Point2; 4] {
    [
        Point2::new(0.0, 0.0),
        Point2::new(2.0, 0.0),
        Point2::new(1.0, 4.0),
        Point2::new(1.0, 2.0),
    ]
}

/// Convex hexahedron with two slanted faces.
pub fn conv_hex_vertices() -> [Point3; 8] {
    [
        Point3::new(1.0, 2.0, 1.0),
        Point3::new(1.0, 2.0, -1.0),
        Point3::new(1.0, 0.0, -1.0),
        Point3::new(1.0, 0.0, 1.0),
        Point3::new(-1.0, 1.0, 1.0),
        Point3::new(-1.0, 1.0, -1.0),
        Point3::new(-1.0, -1.0, -1.0),
        Point3::new(-1.0, -1.0, 1.0),
    ]
}

/// The biunit cube `[-1, 1]^3`.
pub fn biunit_cube_vertices() -> [Point3; 8] {
    crate::geometry::REFERENCE_SIGNS.map(|[x, y, z]| Point3::new(x, y, z))
}

pub fn biunit_square() -> Quadrilateral {
    Quadrilateral::new(biunit_square_vertices()).expect("builtin quadrilateral is valid")
}

pub fn conv_quad() -> Quadrilateral {
    Quadrilateral::new(conv_quad_vertices()).expect("builtin quadrilateral is valid")
}

pub fn nonconv_quad() -> Quadrilateral {
    Quadrilateral::new(nonconv_quad_vertices()).expect("builtin quadrilateral is valid")
}

pub fn conv_hex() -> Hexahedron {
    Hexahedron::new(conv_hex_vertices()).expect("builtin hexahedron is valid")
}

pub fn biunit_cube() -> Hexahedron {
    Hexahedron::new(biunit_cube_vertices()).expect("builtin hexahedron is valid")
}
