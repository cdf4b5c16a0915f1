//! Moment coordinates on convex hexahedra with planar faces.
//!
//! In a per-point frame where `V - p` has the sign pattern of the reference
//! cube, the 8x8 system `[1; W; Delta(p); d(p)] phi = e_1` is nonsingular
//! and its solution is nonnegative. Here `W` holds the frame coordinates
//! `w_i` of `v_i - p`, `Delta` the signed distances between projections
//! onto the three coordinate planes, and `d` the signed lengths `|w_i|`.
//!
//! On a face the `Delta` columns of that face's vertices are zeroed, which
//! makes the off-face weights vanish.

mod frame;

pub use frame::{
    edge_line_functional, reference_frame, sign_pattern_ok, sign_pattern_ok_on_boundary, Frame3,
    FrameStrategy, MIN_FRAME_DET, SIGN_ZERO_REL_TOL,
};

use crate::bary::BaryCoords;
use crate::coords2d::moment_coords_quad;
use crate::error::{Error, Result};
use crate::geometry::{Hexahedron, Point2, Point3, PointLocation, Quadrilateral, HEX_FACES};
use crate::smallsolve::{solve_square, SquareSystem};

/// Signs of the partial-distance rows; row `r` omits frame axis `r`.
pub const DELTA_SIGNS: [[f64; 8]; 3] = [
    [1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0],
    [1.0, 1.0, -1.0, -1.0, -1.0, -1.0, 1.0, 1.0],
];

/// Signs of the distance row.
pub const DISTANCE_SIGNS: [f64; 8] = [1.0, -1.0, 1.0, -1.0, -1.0, 1.0, -1.0, 1.0];

/// Signed partial distances, one row per omitted axis.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialDistanceMatrix {
    entries: [[f64; 8]; 3],
    zeroed_face: Option<usize>,
}

impl PartialDistanceMatrix {
    pub fn entries(&self) -> &[[f64; 8]; 3] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row][col]
    }

    /// The face whose columns were zeroed, if `p` lies on the boundary.
    pub fn zeroed_face(&self) -> Option<usize> {
        self.zeroed_face
    }
}

/// Frame coordinates of `v_i - p`.
fn offsets(hex: &Hexahedron, p: &Point3, frame: &Frame3) -> [Point3; 8] {
    hex.vertices().map(|v| frame.inverse() * (v - p))
}

fn face_of(hex: &Hexahedron, p: &Point3) -> Option<usize> {
    match hex.locate(p) {
        PointLocation::OnFace(f) => Some(f),
        PointLocation::AtVertex(i) => HEX_FACES.iter().position(|f| f.contains(&i)),
        _ => None,
    }
}

pub fn partial_distance_matrix(
    hex: &Hexahedron,
    p: &Point3,
    frame: &Frame3,
) -> PartialDistanceMatrix {
    let w = offsets(hex, p, frame);
    let mut entries = [[0.0; 8]; 3];
    for (r, row) in entries.iter_mut().enumerate() {
        let (j, k) = ((r + 1) % 3, (r + 2) % 3);
        for (i, wi) in w.iter().enumerate() {
            row[i] = DELTA_SIGNS[r][i] * wi[j].hypot(wi[k]);
        }
    }
    let zeroed_face = face_of(hex, p);
    if let Some(f) = zeroed_face {
        for row in entries.iter_mut() {
            for &i in &HEX_FACES[f] {
                row[i] = 0.0;
            }
        }
    }
    PartialDistanceMatrix {
        entries,
        zeroed_face,
    }
}

/// Signed frame lengths `|w_i|`.
pub fn distance_row_3d(hex: &Hexahedron, p: &Point3, frame: &Frame3) -> [f64; 8] {
    let w = offsets(hex, p, frame);
    std::array::from_fn(|i| DISTANCE_SIGNS[i] * w[i].norm())
}

/// Coordinates together with the frame used to compute them.
#[derive(Debug, Clone, PartialEq)]
pub struct HexCoords {
    pub coords: BaryCoords,
    /// `None` at a vertex, where no system is solved.
    pub frame: Option<Frame3>,
    pub location: PointLocation,
}

/// Assembles the moment system for `p` in the given frame, rows scaled by `1/diam`.
pub fn moment_system_hex(hex: &Hexahedron, p: &Point3, frame: &Frame3) -> SquareSystem {
    let scale = hex.diameter();
    let delta = partial_distance_matrix(hex, p, frame);
    let d = distance_row_3d(hex, p, frame);
    let w = offsets(hex, p, frame);
    let mut sys = SquareSystem::zeros(8);
    sys.rhs_mut()[0] = 1.0;
    for i in 0..8 {
        sys.set(0, i, 1.0);
        for r in 0..3 {
            sys.set(1 + r, i, w[i][r] / scale);
            sys.set(4 + r, i, delta.get(r, i) / scale);
        }
        sys.set(7, i, d[i] / scale);
    }
    sys
}

pub fn moment_coords_hex(hex: &Hexahedron, p: &Point3) -> Result<HexCoords> {
    let location = hex.locate(p);
    match location {
        PointLocation::Exterior => return Err(Error::OutsideDomain),
        PointLocation::AtVertex(i) => {
            return Ok(HexCoords {
                coords: BaryCoords::kronecker(8, i),
                frame: None,
                location,
            })
        }
        _ => {}
    }
    let frame = reference_frame(hex, p)?;
    let phi = solve_square(&moment_system_hex(hex, p, &frame))?;
    Ok(HexCoords {
        coords: BaryCoords::new(phi),
        frame: Some(frame),
        location,
    })
}

/// Moment coordinates of an interior point in a caller-chosen frame.
///
/// The frame's axes are reused at `p`; it must pass the strict sign check
/// there, otherwise `FrameNotFound` is returned.
pub fn moment_coords_hex_in_frame(
    hex: &Hexahedron,
    p: &Point3,
    frame: &Frame3,
) -> Result<BaryCoords> {
    if hex.locate(p) != PointLocation::Interior {
        return Err(Error::OutsideDomain);
    }
    let frame = frame.moved_to(*p);
    if let Some((row, vertex, worst)) =
        frame::first_violation(&frame.vertex_coords(hex), hex.diameter(), |_, _| false)
    {
        return Err(Error::FrameNotFound { row, vertex, worst });
    }
    Ok(BaryCoords::new(solve_square(&moment_system_hex(
        hex, p, &frame,
    ))?))
}

/// 2D moment coordinates of `p` on face `face`, listed in face vertex order.
///
/// The face is drawn in the two in-plane axes of `frame`, where its normal
/// row of `W` vanishes; this is the quadrilateral the hexahedral system
/// reduces to when `p` lies on that face.
pub fn face_quad_coords(
    hex: &Hexahedron,
    face: usize,
    p: &Point3,
    frame: &Frame3,
) -> Result<BaryCoords> {
    let normal_row = face / 2;
    let (j, k) = ((normal_row + 1) % 3, (normal_row + 2) % 3);
    let pts = HEX_FACES[face].map(|i| {
        let w = frame.inverse() * (hex.vertex(i) - p);
        Point2::new(w[j], w[k])
    });
    let quad = Quadrilateral::new(pts)?;
    let mut c = moment_coords_quad(&quad, &Point2::zeros())?.into_vec();
    if quad.was_reversed() {
        c.swap(1, 3);
    }
    Ok(BaryCoords::new(c))
}
