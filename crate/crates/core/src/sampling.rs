//! Seeded random geometry and point generators for property checks.

use std::f64::consts::TAU;

use nalgebra::Matrix3;
use rand::Rng;

use crate::builtin;
use crate::geometry::{
    signed_area, Hexahedron, Point2, Point3, PointLocation, Quadrilateral, HEX_FACES,
};

/// Smallest accepted `|corner area| / diameter^2` for random quads.
const MIN_CORNER_QUALITY: f64 = 1e-3;

/// A random simple (convex or nonconvex) quadrilateral, star-shaped about
/// the origin, with no near-degenerate corners.
pub fn random_simple_quad<R: Rng + ?Sized>(rng: &mut R) -> Quadrilateral {
    loop {
        let mut angles: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..TAU));
        angles.sort_by(f64::total_cmp);
        let verts = angles.map(|a| {
            let r = rng.random_range(0.2..2.0);
            Point2::new(r * a.cos(), r * a.sin())
        });
        let Ok(q) = Quadrilateral::new(verts) else {
            continue;
        };
        let d2 = q.diameter().powi(2);
        let v = q.vertices();
        let ok = (0..4).all(|i| {
            signed_area(&v[(i + 3) % 4], &v[i], &v[(i + 1) % 4]).abs() >= MIN_CORNER_QUALITY * d2
        });
        // Star-shaped about the origin guarantees simplicity only if the origin is interior.
        if ok && q.locate(&Point2::zeros()) == PointLocation::Interior {
            return q;
        }
    }
}

pub fn random_convex_quad<R: Rng + ?Sized>(rng: &mut R) -> Quadrilateral {
    loop {
        let q = random_simple_quad(rng);
        if q.is_convex() {
            return q;
        }
    }
}

pub fn random_nonconvex_quad<R: Rng + ?Sized>(rng: &mut R) -> Quadrilateral {
    loop {
        let q = random_simple_quad(rng);
        if !q.is_convex() {
            return q;
        }
    }
}

/// Uniform rejection sample of a strictly interior point.
pub fn interior_point_quad<R: Rng + ?Sized>(quad: &Quadrilateral, rng: &mut R) -> Point2 {
    let (lo, hi) = quad.bounding_box();
    loop {
        let p = Point2::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
        if quad.locate(&p) == PointLocation::Interior {
            return p;
        }
    }
}

/// `(1 - t) v_i + t v_{i+1}`.
pub fn point_on_edge_quad(quad: &Quadrilateral, edge: usize, t: f64) -> Point2 {
    quad.vertex(edge) * (1.0 - t) + quad.vertex(edge + 1) * t
}

/// An invertible affine image of the biunit cube with condition number below 20.
pub fn random_affine_cube<R: Rng + ?Sized>(rng: &mut R) -> Hexahedron {
    loop {
        let a = Matrix3::from_fn(|_, _| rng.random_range(-1.0..1.0)) + Matrix3::identity() * 1.5;
        let svd = a.svd(false, false);
        let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
        if smin <= 0.0 || smax / smin > 20.0 {
            continue;
        }
        let shift = Point3::from_fn(|_, _| rng.random_range(-3.0..3.0));
        let verts = builtin::biunit_cube_vertices().map(|v| a * v + shift);
        if let Ok(h) = Hexahedron::new(verts) {
            return h;
        }
    }
}

/// A projective image `x -> (A x + b) / (1 + c.x)` of the biunit cube with
/// a positive denominator on the cube, so faces stay planar and the solid
/// stays convex while opposite faces generally stop being parallel.
pub fn random_projective_cube<R: Rng + ?Sized>(rng: &mut R) -> Hexahedron {
    loop {
        let a = Matrix3::from_fn(|_, _| rng.random_range(-0.4..0.4)) + Matrix3::identity();
        let c = Point3::from_fn(|_, _| rng.random_range(-0.2..0.2));
        let shift = Point3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let verts = builtin::biunit_cube_vertices().map(|v| (a * v + shift) / (1.0 + c.dot(&v)));
        if let Ok(h) = Hexahedron::new(verts) {
            let svd = a.svd(false, false);
            if svd.singular_values.max() / svd.singular_values.min() < 10.0 {
                return h;
            }
        }
    }
}

/// Trilinear image of a uniform point of the open reference cube.
pub fn interior_point_hex<R: Rng + ?Sized>(hex: &Hexahedron, rng: &mut R) -> Point3 {
    let u = Point3::from_fn(|_, _| rng.random_range(-1.0..1.0));
    hex.trilinear(&u)
}

/// Bilinear image of a uniform point of the unit square on face `face`.
pub fn point_on_face_hex<R: Rng + ?Sized>(hex: &Hexahedron, face: usize, rng: &mut R) -> Point3 {
    let [a, b, c, d] = HEX_FACES[face].map(|i| *hex.vertex(i));
    let s: f64 = rng.random_range(0.0..1.0);
    let t: f64 = rng.random_range(0.0..1.0);
    a * ((1.0 - s) * (1.0 - t)) + b * (s * (1.0 - t)) + c * (s * t) + d * ((1.0 - s) * t)
}
