use super::{
    diameter, quad::quad_violations, Point2, Point3, PointLocation, Violation, CLASSIFY_REL_TOL,
    COINCIDENT_REL_TOL, HEX_SHAPE_REL_TOL,
};
use crate::error::{Error, Result};

/// Face connectivity. Vertex numbering follows the sign pattern of `V - p`
/// for the reference cube `[-1, 1]^3`:
///
/// ```text
///   v0 (+,+,+)  v1 (+,+,-)  v2 (+,-,-)  v3 (+,-,+)
///   v4 (-,+,+)  v5 (-,+,-)  v6 (-,-,-)  v7 (-,-,+)
/// ```
pub const HEX_FACES: [[usize; 4]; 6] = [
    [0, 1, 2, 3],
    [4, 5, 6, 7],
    [0, 1, 5, 4],
    [3, 2, 6, 7],
    [0, 3, 7, 4],
    [1, 2, 6, 5],
];

/// Opposite faces. Pair `r` separates the `+` and `-` vertices of sign-pattern row `r`.
pub const HEX_FACE_PAIRS: [(usize, usize); 3] = [(0, 1), (2, 3), (4, 5)];

/// The twelve edges as vertex index pairs.
pub const HEX_EDGES: [(usize, usize); 12] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 0),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 4),
    (0, 4),
    (1, 5),
    (2, 6),
    (3, 7),
];

/// Supporting plane `normal . x = offset` with unit outward normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FacePlane {
    pub normal: Point3,
    pub offset: f64,
}

impl FacePlane {
    /// Positive outside the solid.
    pub fn signed_distance(&self, p: &Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// A convex hexahedron with planar quadrilateral faces.
///
/// Vertex order must already match [`HEX_FACES`]; it is never permuted.
#[derive(Debug, Clone, PartialEq)]
pub struct Hexahedron {
    vertices: [Point3; 8],
    diameter: f64,
    planes: [FacePlane; 6],
}

impl Hexahedron {
    pub fn new(vertices: [Point3; 8]) -> Result<Self> {
        let violations = hex_violations(&vertices);
        if !violations.is_empty() {
            return Err(Error::InvalidGeometry(violations));
        }
        let planes = outward_planes(&vertices);
        Ok(Self {
            diameter: diameter(&vertices),
            vertices,
            planes,
        })
    }

    pub fn from_coords(coords: [[f64; 3]; 8]) -> Result<Self> {
        Self::new(coords.map(|[x, y, z]| Point3::new(x, y, z)))
    }

    pub fn vertices(&self) -> &[Point3; 8] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point3 {
        &self.vertices[i]
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn planes(&self) -> &[FacePlane; 6] {
        &self.planes
    }

    pub fn plane(&self, face: usize) -> &FacePlane {
        &self.planes[face]
    }

    pub fn face_vertices(&self, face: usize) -> [Point3; 4] {
        HEX_FACES[face].map(|i| self.vertices[i])
    }

    pub fn centroid(&self) -> Point3 {
        self.vertices.iter().sum::<Point3>() / 8.0
    }

    pub fn default_tol(&self) -> f64 {
        CLASSIFY_REL_TOL * self.diameter
    }

    /// Faces whose supporting plane passes within `tol` of `p`.
    pub fn incident_faces(&self, p: &Point3, tol: f64) -> [bool; 6] {
        self.planes.map(|pl| pl.signed_distance(p).abs() <= tol)
    }

    /// Vertex, then lowest-index face, then interior; exterior when `p` is
    /// more than `tol` outside any supporting plane.
    pub fn classify(&self, p: &Point3, tol: f64) -> PointLocation {
        if let Some(i) = (0..8).find(|&i| (p - self.vertices[i]).norm() <= tol) {
            return PointLocation::AtVertex(i);
        }
        let dist = self.planes.map(|pl| pl.signed_distance(p));
        if dist.iter().any(|d| *d > tol) {
            return PointLocation::Exterior;
        }
        // Inside every half-space, so a point on a supporting plane is on that face.
        match dist.iter().position(|d| *d >= -tol) {
            Some(face) => PointLocation::OnFace(face),
            None => PointLocation::Interior,
        }
    }

    pub fn locate(&self, p: &Point3) -> PointLocation {
        self.classify(p, self.default_tol())
    }

    pub fn bounding_box(&self) -> (Point3, Point3) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices[1..] {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }

    /// Trilinear map of the reference cube `[-1, 1]^3` onto the hexahedron.
    pub fn trilinear(&self, u: &Point3) -> Point3 {
        let mut p = Point3::zeros();
        for (i, v) in self.vertices.iter().enumerate() {
            let s = REFERENCE_SIGNS[i];
            let w = (1.0 + s[0] * u.x) * (1.0 + s[1] * u.y) * (1.0 + s[2] * u.z) / 8.0;
            p += v * w;
        }
        p
    }
}

/// Vertex signs of the reference cube, one row per vertex.
pub const REFERENCE_SIGNS: [[f64; 3]; 8] = [
    [1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0],
    [1.0, -1.0, 1.0],
    [-1.0, 1.0, 1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, -1.0],
    [-1.0, -1.0, 1.0],
];

/// Newell normal (unnormalized) and centroid of a cyclic quadrilateral.
fn newell(face: &[Point3; 4]) -> (Point3, Point3) {
    let mut n = Point3::zeros();
    for i in 0..4 {
        let a = face[i];
        let b = face[(i + 1) % 4];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    (n, face.iter().sum::<Point3>() / 4.0)
}

fn outward_planes(v: &[Point3; 8]) -> [FacePlane; 6] {
    let center = v.iter().sum::<Point3>() / 8.0;
    std::array::from_fn(|f| {
        let face = HEX_FACES[f].map(|i| v[i]);
        let (n, c) = newell(&face);
        let mut normal = n.normalize();
        if normal.dot(&(center - c)) > 0.0 {
            normal = -normal;
        }
        FacePlane {
            normal,
            offset: normal.dot(&c),
        }
    })
}

/// In-plane 2D coordinates of a planar face, for simplicity checks.
fn face_to_2d(face: &[Point3; 4], normal: &Point3) -> [Point2; 4] {
    let helper = if normal.x.abs() < 0.9 {
        Point3::x()
    } else {
        Point3::y()
    };
    let u = normal.cross(&helper).normalize();
    let w = normal.cross(&u);
    face.map(|p| Point2::new(p.dot(&u), p.dot(&w)))
}

pub(super) fn hex_violations(v: &[Point3; 8]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, p) in v.iter().enumerate() {
        if !p.iter().all(|c| c.is_finite()) {
            out.push(Violation::NonFinite { vertex: i });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let diam = diameter(v);
    for i in 0..8 {
        for j in i + 1..8 {
            if (v[i] - v[j]).norm() <= COINCIDENT_REL_TOL * diam {
                out.push(Violation::CoincidentVertices { a: i, b: j });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    let tol = HEX_SHAPE_REL_TOL * diam;
    for (f, idx) in HEX_FACES.iter().enumerate() {
        let face = idx.map(|i| v[i]);
        let (n, c) = newell(&face);
        if n.norm() <= COINCIDENT_REL_TOL * diam * diam {
            out.push(Violation::FaceNotSimple { face: f });
            continue;
        }
        let n = n.normalize();
        let deviation = face
            .iter()
            .map(|p| n.dot(&(p - c)).abs())
            .fold(0.0, f64::max);
        if deviation > tol {
            out.push(Violation::NonPlanarFace { face: f, deviation });
        }
        if !quad_violations(&face_to_2d(&face, &n)).is_empty() {
            out.push(Violation::FaceNotSimple { face: f });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let planes = outward_planes(v);
    for (f, plane) in planes.iter().enumerate() {
        for (i, p) in v.iter().enumerate() {
            if HEX_FACES[f].contains(&i) {
                continue;
            }
            let excess = plane.signed_distance(p);
            if excess > tol {
                out.push(Violation::NotConvex {
                    face: f,
                    vertex: i,
                    excess,
                });
            }
        }
    }
    for (a, b) in HEX_FACE_PAIRS {
        for (face, other) in [(a, b), (b, a)] {
            for &i in &HEX_FACES[other] {
                if planes[face].signed_distance(&v[i]) >= -tol {
                    out.push(Violation::OppositeFacesNotSeparated { face, vertex: i });
                }
            }
        }
    }
    out
}
