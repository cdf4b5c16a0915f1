//! Coordinates on simple quadrilaterals.
//!
//! Both families solve a 4x4 system made of the reproducing rows
//! `[1; V - p]` and one moment row whose entries alternate in sign like the
//! kernel of `[1; V]`:
//!
//! - moment coordinates use vertex distances `(d_1, -d_2, d_3, -d_4)` and
//!   coincide with mean value coordinates on convex and nonconvex quads;
//! - Wachspress coordinates use `rho_i = l_{i,i-1} l_{i,i+1} h_{i-1} h_i`
//!   built from edge lengths and edge distances, on convex quads only.
//!
//! The closed-form oracles ([`mvc_oracle`], [`cramer_coords_quad`],
//! [`wachspress_oracle`]) compute the same quantities by independent routes.

mod moment;
mod wachspress;

pub use moment::{
    cramer_coords_quad, moment_coords_quad, moment_row, mvc_oracle, triangle_barycentric,
};
pub use wachspress::{wachspress_coords_quad, wachspress_oracle, wachspress_row};

use crate::bary::BaryCoords;
use crate::error::Result;
use crate::geometry::{Point2, Quadrilateral};
use crate::smallsolve::{solve_square, SquareSystem};

/// Alternating sign pattern `(+, -, +, -)` of the kernel of `[1; V]`.
pub const KERNEL_SIGNS: [f64; 4] = [1.0, -1.0, 1.0, -1.0];

/// A moment row: four entries with sign pattern `(+, -, +, -)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    entries: [f64; 4],
}

impl MomentRow {
    /// Applies the alternating signs to nonnegative magnitudes.
    pub fn from_magnitudes(magnitudes: [f64; 4]) -> Self {
        Self {
            entries: std::array::from_fn(|i| KERNEL_SIGNS[i] * magnitudes[i]),
        }
    }

    pub fn entries(&self) -> &[f64; 4] {
        &self.entries
    }

    pub fn magnitudes(&self) -> [f64; 4] {
        self.entries.map(f64::abs)
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        self.entries.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Solves `[1; (V - p)/diam; row/|row|_inf] phi = [1; 0; 0; 0]`.
///
/// Centering at `p` and scaling each row leaves the solution unchanged and
/// keeps the matrix entries of order one.
fn solve_with_row(quad: &Quadrilateral, p: &Point2, row: &MomentRow) -> Result<BaryCoords> {
    let scale = quad.diameter();
    let row_scale = row.entries.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let row_scale = if row_scale > 0.0 { row_scale } else { 1.0 };
    let mut sys = SquareSystem::zeros(4);
    for (j, v) in quad.vertices().iter().enumerate() {
        let w = (v - p) / scale;
        sys.set(0, j, 1.0);
        sys.set(1, j, w.x);
        sys.set(2, j, w.y);
        sys.set(3, j, row.entries[j] / row_scale);
    }
    sys.rhs_mut()[0] = 1.0;
    Ok(BaryCoords::new(solve_square(&sys)?))
}
