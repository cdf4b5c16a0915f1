//! Finite-difference gradients of coordinate functions.

use moment_coords::coords3d::moment_coords_hex_in_frame;
use moment_coords::{Point3, PointLocation};

use crate::method::{evaluate, Method};
use crate::spec::Geometry;

/// Step relative to the geometry diameter.
pub const FD_REL_STEP: f64 = 1e-6;

/// `grad[i][j] = d phi_i / d x_j` by central differences with step
/// `FD_REL_STEP * diam`, falling back to one-sided differences when a
/// stencil point leaves the domain. `None` if no stencil fits.
///
/// Hexahedral coordinates depend on the per-point frame, so stencil points
/// of an interior point are solved in that point's frame; a stencil point
/// where the frame breaks the sign pattern counts as outside.
pub fn fd_gradient(geometry: &Geometry, method: Method, point: &[f64]) -> Option<Vec<Vec<f64>>> {
    let h = FD_REL_STEP * geometry.diameter();
    let dim = point.len();
    let center_frame = match geometry {
        Geometry::Hex(_) => evaluate(geometry, method, point)
            .ok()
            .filter(|e| e.location == Some(PointLocation::Interior))
            .and_then(|e| e.frame),
        _ => None,
    };
    let eval = |offset: f64, axis: usize| {
        let mut q = point.to_vec();
        q[axis] += offset;
        match (geometry, &center_frame) {
            (Geometry::Hex(hex), Some(frame)) => {
                moment_coords_hex_in_frame(hex, &Point3::new(q[0], q[1], q[2]), frame)
                    .ok()
                    .map(|c| c.into_vec())
            }
            _ => evaluate(geometry, method, &q).ok().map(|e| e.coords),
        }
    };
    let n = geometry.vertex_count();
    let mut grad = vec![vec![0.0; dim]; n];
    for axis in 0..dim {
        let plus = eval(h, axis);
        let minus = eval(-h, axis);
        let column: Vec<f64> = match (plus, minus) {
            (Some(p), Some(m)) => p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect(),
            (Some(p), None) => {
                let c = eval(0.0, axis)?;
                p.iter().zip(&c).map(|(a, b)| (a - b) / h).collect()
            }
            (None, Some(m)) => {
                let c = eval(0.0, axis)?;
                c.iter().zip(&m).map(|(a, b)| (a - b) / h).collect()
            }
            (None, None) => return None,
        };
        for (row, d) in grad.iter_mut().zip(column) {
            row[axis] = d;
        }
    }
    Some(grad)
}
