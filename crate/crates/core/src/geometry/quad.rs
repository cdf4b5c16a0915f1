use super::{
    cross2, diameter, signed_area, Point2, PointLocation, Violation, CLASSIFY_REL_TOL,
    COINCIDENT_REL_TOL, DEGENERATE_AREA_REL_TOL,
};
use crate::error::{Error, Result};

/// A simple quadrilateral with counterclockwise vertex order.
///
/// Clockwise input is reversed at construction while keeping the first
/// vertex in place, i.e. `(v0, v1, v2, v3)` becomes `(v0, v3, v2, v1)`.
/// Edge `i` runs from vertex `i` to vertex `(i + 1) % 4`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrilateral {
    vertices: [Point2; 4],
    diameter: f64,
    convex: bool,
    reversed: bool,
}

impl Quadrilateral {
    pub fn new(vertices: [Point2; 4]) -> Result<Self> {
        let violations = quad_violations(&vertices);
        if !violations.is_empty() {
            return Err(Error::InvalidGeometry(violations));
        }
        let mut vertices = vertices;
        let reversed = shoelace(&vertices) < 0.0;
        if reversed {
            vertices.swap(1, 3);
        }
        let convex = corner_areas_ccw(&vertices).iter().all(|a| *a > 0.0);
        Ok(Self {
            diameter: diameter(&vertices),
            vertices,
            convex,
            reversed,
        })
    }

    pub fn from_coords(coords: [[f64; 2]; 4]) -> Result<Self> {
        Self::new(coords.map(|[x, y]| Point2::new(x, y)))
    }

    pub fn vertices(&self) -> &[Point2; 4] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point2 {
        &self.vertices[i % 4]
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    /// Whether the input order was clockwise and has been reversed.
    pub fn was_reversed(&self) -> bool {
        self.reversed
    }

    /// Total (positive) area.
    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        (self.vertex(i + 1) - self.vertex(i)).norm()
    }

    /// Distance from `p` to the supporting line of edge `i`, positive on the
    /// interior side.
    pub fn edge_distance(&self, i: usize, p: &Point2) -> Result<f64> {
        let a = self.vertex(i);
        let e = self.vertex(i + 1) - a;
        let len = e.norm();
        if len < 1e-13 {
            return Err(Error::DegenerateEdge { edge: i % 4 });
        }
        Ok(cross2(&e, &(p - a)) / len)
    }

    /// Unit normal of edge `i` pointing away from the interior.
    pub fn outward_normal(&self, i: usize) -> Result<Point2> {
        let e = self.vertex(i + 1) - self.vertex(i);
        let len = e.norm();
        if len < 1e-13 {
            return Err(Error::DegenerateEdge { edge: i % 4 });
        }
        Ok(Point2::new(e.y, -e.x) / len)
    }

    /// Default classification tolerance: `1e-10 * diameter`.
    pub fn default_tol(&self) -> f64 {
        CLASSIFY_REL_TOL * self.diameter
    }

    /// Classifies `p` with vertex before edge before interior precedence.
    pub fn classify(&self, p: &Point2, tol: f64) -> PointLocation {
        if let Some(i) = (0..4).find(|&i| (p - self.vertices[i]).norm() <= tol) {
            return PointLocation::AtVertex(i);
        }
        for i in 0..4 {
            let a = self.vertex(i);
            let e = self.vertex(i + 1) - a;
            let t = ((p - a).dot(&e) / e.norm_squared()).clamp(0.0, 1.0);
            if (a + e * t - p).norm() <= tol {
                return PointLocation::OnEdge { edge: i, t };
            }
        }
        if self.crossing_parity(p) {
            PointLocation::Interior
        } else {
            PointLocation::Exterior
        }
    }

    /// [`classify`](Self::classify) at the default tolerance.
    pub fn locate(&self, p: &Point2) -> PointLocation {
        self.classify(p, self.default_tol())
    }

    /// Even-odd rule with a ray towards +x.
    fn crossing_parity(&self, p: &Point2) -> bool {
        let mut inside = false;
        for i in 0..4 {
            let a = self.vertex(i);
            let b = self.vertex(i + 1);
            if (a.y > p.y) != (b.y > p.y) {
                let x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x_cross {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Axis-aligned bounding box as `(min, max)`.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices[1..] {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }
}

/// Signed polygon area (positive for CCW).
fn shoelace(v: &[Point2; 4]) -> f64 {
    0.5 * (0..4).map(|i| cross2(&v[i], &v[(i + 1) % 4])).sum::<f64>()
}

/// `A(v_{i-1}, v_i, v_{i+1})` for each corner, in the given order.
pub(super) fn corner_areas_ccw(v: &[Point2; 4]) -> [f64; 4] {
    let sign = if shoelace(v) < 0.0 { -1.0 } else { 1.0 };
    std::array::from_fn(|i| sign * signed_area(&v[(i + 3) % 4], &v[i], &v[(i + 1) % 4]))
}

pub(super) fn quad_violations(v: &[Point2; 4]) -> Vec<Violation> {
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
    for i in 0..4 {
        for j in i + 1..4 {
            if (v[i] - v[j]).norm() <= COINCIDENT_REL_TOL * diam {
                out.push(Violation::CoincidentVertices { a: i, b: j });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..4 {
        let a = signed_area(&v[(i + 3) % 4], &v[i], &v[(i + 1) % 4]);
        if a.abs() <= DEGENERATE_AREA_REL_TOL * diam * diam {
            out.push(Violation::CollinearCorner { vertex: i });
        }
    }
    for (ea, eb) in [(0, 2), (1, 3)] {
        if segments_intersect(&v[ea], &v[(ea + 1) % 4], &v[eb], &v[(eb + 1) % 4]) {
            out.push(Violation::SelfIntersecting {
                edge_a: ea,
                edge_b: eb,
            });
        }
    }
    out
}

/// Closed-segment intersection test (touching counts).
fn segments_intersect(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let o1 = signed_area(a, b, c);
    let o2 = signed_area(a, b, d);
    let o3 = signed_area(c, d, a);
    let o4 = signed_area(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    let on_segment = |p: &Point2, q: &Point2, r: &Point2| {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}
