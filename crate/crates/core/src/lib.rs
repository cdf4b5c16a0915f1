//! Moment coordinates: nonnegative generalized barycentric coordinates on
//! 1D node sets, simple quadrilaterals and convex planar-faced hexahedra.
//!
//! Every coordinate family here is obtained by completing the constant and
//! linear reproducing conditions with extra "moment" rows built from signed
//! distances, and solving the resulting square linear system:
//!
//! - [`coords1d`]: piecewise-linear hat functions recovered from an `n x n`
//!   system on an arbitrary sorted node set.
//! - [`coords2d`]: moment coordinates (identical to mean value coordinates)
//!   on simple quadrilaterals, and Wachspress coordinates on convex ones,
//!   each with closed-form oracles.
//! - [`coords3d`]: moment coordinates on convex hexahedra, assembled in a
//!   per-point reference frame that enforces the required sign pattern.
//!
//! Indices are zero-based throughout.

// NaN must fail tolerance checks, hence `!(x > tol)`.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bary;
pub mod builtin;
pub mod coords1d;
pub mod coords2d;
pub mod coords3d;
pub mod error;
pub mod geometry;
pub mod sampling;
pub mod smallsolve;

pub use bary::BaryCoords;
pub use error::{Error, Result};
pub use geometry::{Hexahedron, NodeSet1D, Point2, Point3, PointLocation, Quadrilateral};
