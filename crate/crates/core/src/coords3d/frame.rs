use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::geometry::{Hexahedron, Point3, HEX_FACES, HEX_FACE_PAIRS, REFERENCE_SIGNS};

/// Entries of `V - p` smaller than this (relative to the diameter) count as zero.
pub const SIGN_ZERO_REL_TOL: f64 = 1e-12;
/// Smallest accepted `|det [r1 r2 r3]|` for unit axes.
pub const MIN_FRAME_DET: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameStrategy {
    Identity,
    Bisector,
    EdgeLine,
}

impl FrameStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            FrameStrategy::Identity => "identity",
            FrameStrategy::Bisector => "bisector",
            FrameStrategy::EdgeLine => "edge-line",
        }
    }
}

/// A per-point basis `[r1 r2 r3]` of unit axes anchored at `origin`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame3 {
    axes: Matrix3<f64>,
    inverse: Matrix3<f64>,
    origin: Point3,
    strategy: FrameStrategy,
}

impl Frame3 {
    pub fn identity(origin: Point3) -> Self {
        Self {
            axes: Matrix3::identity(),
            inverse: Matrix3::identity(),
            origin,
            strategy: FrameStrategy::Identity,
        }
    }

    /// Builds the frame dual to the given functionals (one per row).
    ///
    /// Axes are the columns of the inverse, rescaled to unit length; the
    /// rescaling keeps the sign of every frame coordinate.
    pub fn from_functionals(
        rows: Matrix3<f64>,
        origin: Point3,
        strategy: FrameStrategy,
    ) -> Result<Self> {
        let Some(dual) = rows.try_inverse() else {
            return Err(Error::DegenerateFrame { det: 0.0 });
        };
        let mut axes = dual;
        for mut col in axes.column_iter_mut() {
            let n = col.norm();
            if !(n > 0.0 && n.is_finite()) {
                return Err(Error::DegenerateFrame { det: 0.0 });
            }
            col /= n;
        }
        let det = axes.determinant();
        if !(det.abs() >= MIN_FRAME_DET) {
            return Err(Error::DegenerateFrame { det });
        }
        let inverse = axes.try_inverse().ok_or(Error::DegenerateFrame { det })?;
        Ok(Self {
            axes,
            inverse,
            origin,
            strategy,
        })
    }

    /// The same axes anchored at another point.
    pub fn moved_to(&self, origin: Point3) -> Self {
        Self {
            origin,
            ..self.clone()
        }
    }

    pub fn axes(&self) -> &Matrix3<f64> {
        &self.axes
    }

    pub fn axis(&self, j: usize) -> Point3 {
        self.axes.column(j).into_owned()
    }

    pub fn inverse(&self) -> &Matrix3<f64> {
        &self.inverse
    }

    pub fn origin(&self) -> &Point3 {
        &self.origin
    }

    pub fn strategy(&self) -> FrameStrategy {
        self.strategy
    }

    pub fn determinant(&self) -> f64 {
        self.axes.determinant()
    }

    /// Frame coordinates `[r1 r2 r3]^{-1} (x - origin)`.
    pub fn coords(&self, x: &Point3) -> Point3 {
        self.inverse * (x - self.origin)
    }

    /// Frame coordinates `w_i` of every `v_i - origin`.
    pub fn vertex_coords(&self, hex: &Hexahedron) -> [Point3; 8] {
        hex.vertices().map(|v| self.coords(&v))
    }
}

/// First entry of `w` that breaks the sign pattern, as `(row, vertex, value)`.
///
/// A zero entry (below `SIGN_ZERO_REL_TOL * diam`) breaks the pattern unless
/// `allow_zero(row, vertex)` holds.
pub(super) fn first_violation(
    w: &[Point3; 8],
    diam: f64,
    allow_zero: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize, f64)> {
    let zero = SIGN_ZERO_REL_TOL * diam;
    for (i, wi) in w.iter().enumerate() {
        for r in 0..3 {
            let s = REFERENCE_SIGNS[i][r] * wi[r];
            let ok = s > zero || (s.abs() <= zero && allow_zero(r, i));
            if !ok {
                return Some((r, i, wi[r]));
            }
        }
    }
    None
}

/// True iff every `w_i` is nonzero entrywise with the signs of the reference cube.
pub fn sign_pattern_ok(w: &[Point3; 8], diam: f64) -> bool {
    first_violation(w, diam, |_, _| false).is_none()
}

/// Sign check for boundary points: an entry of row `r` may vanish when its
/// vertex lies on an incident face of the face pair of row `r`.
pub fn sign_pattern_ok_on_boundary(w: &[Point3; 8], diam: f64, incident: &[bool; 6]) -> bool {
    first_violation(w, diam, boundary_zero_rule(incident)).is_none()
}

fn boundary_zero_rule(incident: &[bool; 6]) -> impl Fn(usize, usize) -> bool + '_ {
    move |r, i| {
        let (a, b) = HEX_FACE_PAIRS[r];
        (incident[a] && HEX_FACES[a].contains(&i)) || (incident[b] && HEX_FACES[b].contains(&i))
    }
}

/// The functional of the plane through `l = S_a ∩ S_b` and `p`, oriented
/// positive on face `a` and normalized.
///
/// `A` is the point of `l` closest to `p`. For parallel faces the plane
/// through `p` parallel to both is used. On face `a` (resp. `b`) the limit
/// is the outward normal `n_a` (resp. `-n_b`).
pub fn edge_line_functional(hex: &Hexahedron, pair: usize, p: &Point3) -> Point3 {
    let (a, b) = HEX_FACE_PAIRS[pair];
    let (pa, pb) = (hex.plane(a), hex.plane(b));
    let tol = hex.default_tol();
    if pa.signed_distance(p).abs() <= tol {
        return pa.normal;
    }
    if pb.signed_distance(p).abs() <= tol {
        return -pb.normal;
    }
    let dir = pa.normal.cross(&pb.normal);
    if dir.norm() <= 1e-12 {
        return pa.normal;
    }
    let system = Matrix3::from_rows(&[
        pa.normal.transpose(),
        pb.normal.transpose(),
        dir.transpose(),
    ]);
    let rhs = Point3::new(pa.offset, pb.offset, dir.dot(p));
    let Some(closest) = system.lu().solve(&rhs) else {
        return pa.normal;
    };
    let g = dir.cross(&(p - closest)).normalize();
    let face_a_center = hex.face_vertices(a).iter().sum::<Point3>() / 4.0;
    if g.dot(&(face_a_center - p)) < 0.0 {
        -g
    } else {
        g
    }
}

fn bisector_functional(hex: &Hexahedron, pair: usize) -> Point3 {
    let (a, b) = HEX_FACE_PAIRS[pair];
    (hex.plane(a).normal - hex.plane(b).normal).normalize()
}

/// A frame in which `V - p` has the reference sign pattern.
///
/// Tries the identity, then the face-pair bisectors, then the plane
/// through each pair's common line and `p`; the first verified frame wins.
pub fn reference_frame(hex: &Hexahedron, p: &Point3) -> Result<Frame3> {
    let diam = hex.diameter();
    let incident = hex.incident_faces(p, hex.default_tol());
    let rule = boundary_zero_rule(&incident);

    let mut last_violation = None;
    let mut try_frame = |frame: Result<Frame3>| -> Option<Frame3> {
        let frame = frame.ok()?;
        match first_violation(&frame.vertex_coords(hex), diam, &rule) {
            None => Some(frame),
            Some(v) => {
                last_violation = Some(v);
                None
            }
        }
    };

    if let Some(f) = try_frame(Ok(Frame3::identity(*p))) {
        return Ok(f);
    }
    let bisector = Matrix3::from_rows(&std::array::from_fn::<_, 3, _>(|r| {
        bisector_functional(hex, r).transpose()
    }));
    if let Some(f) = try_frame(Frame3::from_functionals(
        bisector,
        *p,
        FrameStrategy::Bisector,
    )) {
        return Ok(f);
    }
    let edge_line = Matrix3::from_rows(&std::array::from_fn::<_, 3, _>(|r| {
        edge_line_functional(hex, r, p).transpose()
    }));
    if let Some(f) = try_frame(Frame3::from_functionals(
        edge_line,
        *p,
        FrameStrategy::EdgeLine,
    )) {
        return Ok(f);
    }
    let (row, vertex, worst) = last_violation.unwrap_or((0, 0, 0.0));
    Err(Error::FrameNotFound { row, vertex, worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_on_cube_interior() {
        let cube = builtin::biunit_cube();
        for p in [Point3::zeros(), Point3::new(0.3, -0.7, 0.9)] {
            let f = reference_frame(&cube, &p).unwrap();
            assert_eq!(f.strategy(), FrameStrategy::Identity);
            assert!(sign_pattern_ok(&f.vertex_coords(&cube), cube.diameter()));
        }
    }

    #[test]
    fn sign_pattern_examples() {
        let cube = builtin::biunit_cube();
        let w = Frame3::identity(Point3::new(1.0, 0.0, 0.0)).vertex_coords(&cube);
        assert!(!sign_pattern_ok(&w, cube.diameter()));
        assert!(sign_pattern_ok_on_boundary(
            &w,
            cube.diameter(),
            &cube.incident_faces(&Point3::new(1.0, 0.0, 0.0), 1e-12)
        ));

        let hex = builtin::conv_hex();
        let w = Frame3::identity(Point3::zeros()).vertex_coords(&hex);
        assert_eq!(w[3], Point3::new(1.0, 0.0, 1.0));
        assert!(!sign_pattern_ok(&w, hex.diameter()));
    }

    #[test]
    fn example_hex_origin_needs_non_identity_frame() {
        let hex = builtin::conv_hex();
        let f = reference_frame(&hex, &Point3::zeros()).unwrap();
        assert_ne!(f.strategy(), FrameStrategy::Identity);
        assert!(sign_pattern_ok(&f.vertex_coords(&hex), hex.diameter()));
        for j in 0..3 {
            assert!((f.axis(j).norm() - 1.0).abs() <= 1e-12);
        }
        assert!(f.determinant().abs() >= MIN_FRAME_DET);
    }

    #[test]
    fn sheared_cube_center() {
        let shear = Matrix3::new(1.0, 0.8, 0.0, 0.0, 1.0, 0.6, 0.0, 0.0, 1.0);
        let verts = builtin::biunit_cube_vertices().map(|v| shear * v);
        let hex = Hexahedron::new(verts).unwrap();
        let f = reference_frame(&hex, &Point3::zeros()).unwrap();
        assert!(sign_pattern_ok(&f.vertex_coords(&hex), hex.diameter()));
    }

    #[test]
    fn edge_line_functional_matches_scaled_normal_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let hex = sampling::random_projective_cube(&mut rng);
            let p = sampling::interior_point_hex(&hex, &mut rng);
            for (r, &(a, b)) in HEX_FACE_PAIRS.iter().enumerate() {
                let (pa, pb) = (hex.plane(a), hex.plane(b));
                let ha = -pa.signed_distance(&p);
                let hb = -pb.signed_distance(&p);
                let dual = (pa.normal / ha - pb.normal / hb).normalize();
                let g = edge_line_functional(&hex, r, &p);
                assert!((g - dual).norm() <= 1e-9, "{g} vs {dual}");
            }
        }
    }

    #[test]
    fn edge_line_frame_always_verifies_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let hex = sampling::random_projective_cube(&mut rng);
            let p = sampling::interior_point_hex(&hex, &mut rng);
            let rows = Matrix3::from_rows(&std::array::from_fn::<_, 3, _>(|r| {
                edge_line_functional(&hex, r, &p).transpose()
            }));
            let f = Frame3::from_functionals(rows, p, FrameStrategy::EdgeLine).unwrap();
            assert!(sign_pattern_ok(&f.vertex_coords(&hex), hex.diameter()));
        }
    }

    #[test]
    fn boundary_frames_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let hex = builtin::conv_hex();
        for face in 0..6 {
            for _ in 0..50 {
                let p = sampling::point_on_face_hex(&hex, face, &mut rng);
                reference_frame(&hex, &p).unwrap();
            }
        }
    }

    #[test]
    fn degenerate_functionals_rejected() {
        let rows = Matrix3::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0);
        assert!(matches!(
            Frame3::from_functionals(rows, Point3::zeros(), FrameStrategy::EdgeLine),
            Err(Error::DegenerateFrame { .. })
        ));
    }
}
