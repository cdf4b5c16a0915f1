use super::{solve_with_row, MomentRow, KERNEL_SIGNS};
use crate::bary::BaryCoords;
use crate::error::{Error, Result};
use crate::geometry::{
    diameter, signed_area, Point2, PointLocation, Quadrilateral, DEGENERATE_AREA_REL_TOL,
};

/// `(d_1, -d_2, d_3, -d_4)` with `d_i = |p - v_i|`.
pub fn moment_row(quad: &Quadrilateral, p: &Point2) -> MomentRow {
    MomentRow::from_magnitudes(quad.vertices().map(|v| (p - v).norm()))
}

/// Moment coordinates: the unique solution of `[1; V; d(p)] phi = [1; p; 0]`.
///
/// Valid on the closed quadrilateral, including its edges. At a vertex the
/// Kronecker-delta vector is returned without a solve.
pub fn moment_coords_quad(quad: &Quadrilateral, p: &Point2) -> Result<BaryCoords> {
    match quad.locate(p) {
        PointLocation::Exterior => Err(Error::OutsideDomain),
        PointLocation::AtVertex(i) => Ok(BaryCoords::kronecker(4, i)),
        _ => solve_with_row(quad, p, &moment_row(quad, p)),
    }
}

/// Mean value coordinates from the tangent half-angle formula.
///
/// `w_i = (tan(a_{i-1}/2) + tan(a_i/2)) / |v_i - p|`, where `a_i` is the
/// signed angle at `p` from `v_i` to `v_{i+1}`. The half-angle tangent is
/// evaluated as `sin a / (1 + cos a)`, which stays finite for reflex angles.
/// Only defined strictly inside the quadrilateral.
pub fn mvc_oracle(quad: &Quadrilateral, p: &Point2) -> Result<BaryCoords> {
    match quad.locate(p) {
        PointLocation::Interior => {}
        PointLocation::Exterior => return Err(Error::OutsideDomain),
        _ => return Err(Error::OnBoundary),
    }
    let s = quad.vertices().map(|v| v - p);
    let r = s.map(|x| x.norm());
    let tan_half: [f64; 4] = std::array::from_fn(|i| {
        let j = (i + 1) % 4;
        let sin = s[i].x * s[j].y - s[i].y * s[j].x;
        let cos = s[i].dot(&s[j]);
        sin / (r[i] * r[j] + cos)
    });
    let w: [f64; 4] = std::array::from_fn(|i| (tan_half[(i + 3) % 4] + tan_half[i]) / r[i]);
    let total: f64 = w.iter().sum();
    Ok(BaryCoords::new(w.iter().map(|x| x / total).collect()))
}

/// Affine (possibly signed) barycentric coordinates of `p` in a triangle.
pub fn triangle_barycentric(tri: &[Point2; 3], p: &Point2) -> Result<BaryCoords> {
    let [a, b, c] = tri;
    let area = signed_area(a, b, c);
    let scale = diameter(tri);
    if area.abs() <= DEGENERATE_AREA_REL_TOL * scale * scale {
        return Err(Error::DegenerateTriangle { area });
    }
    Ok(BaryCoords::new(vec![
        signed_area(p, b, c) / area,
        signed_area(a, p, c) / area,
        signed_area(a, b, p) / area,
    ]))
}

/// Moment coordinates through Cramer's rule on the four sub-triangles.
///
/// With `tau^i` the triangle coordinates of `p` in the triangle that omits
/// vertex `i` (zero-padded at slot `i`), `A_i` the signed area of that
/// triangle with its vertices in increasing index order, and
/// `nu = (A_1, -A_2, A_3, -A_4)` spanning the kernel of `[1; V]`:
///
/// ```text
/// phi_i = (-1)^i A_i (d . tau^i) / (d . nu)      (one-based i)
/// ```
///
/// For a convex counterclockwise quad the signed areas are the plain
/// triangle areas; signed areas keep `nu` in the kernel on nonconvex quads.
pub fn cramer_coords_quad(quad: &Quadrilateral, p: &Point2) -> Result<BaryCoords> {
    if quad.locate(p) == PointLocation::Exterior {
        return Err(Error::OutsideDomain);
    }
    let d = moment_row(quad, p);
    let v = quad.vertices();
    let mut areas = [0.0; 4];
    let mut numerators = [0.0; 4];
    for i in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let tri = [v[others[0]], v[others[1]], v[others[2]]];
        let tau = triangle_barycentric(&tri, p)?;
        let mut padded = [0.0; 4];
        for (slot, &j) in others.iter().enumerate() {
            padded[j] = tau[slot];
        }
        areas[i] = signed_area(&tri[0], &tri[1], &tri[2]);
        numerators[i] = d.dot(&padded);
    }
    let nu: [f64; 4] = std::array::from_fn(|i| KERNEL_SIGNS[i] * areas[i]);
    let denom = d.dot(&nu);
    Ok(BaryCoords::new(
        (0..4)
            .map(|i| -KERNEL_SIGNS[i] * areas[i] * numerators[i] / denom)
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn moment_row_examples() {
        let sq = builtin::biunit_square();
        let s2 = 2f64.sqrt();
        assert!(close(
            moment_row(&sq, &Point2::zeros()).entries(),
            &[s2, -s2, s2, -s2],
            1e-15
        ));
        let r = moment_row(&sq, sq.vertex(0));
        assert_eq!(r.entries()[0], 0.0);
        assert!(r.entries()[1] < 0.0 && r.entries()[2] > 0.0 && r.entries()[3] < 0.0);

        // Distances from (1,1) to (0,0), (2,0), (1,4), (1,2).
        let nc = builtin::nonconv_quad();
        assert!(close(
            moment_row(&nc, &Point2::new(1.0, 1.0)).entries(),
            &[s2, -s2, 3.0, -1.0],
            1e-15
        ));
    }

    #[test]
    fn square_center_is_uniform() {
        let sq = builtin::biunit_square();
        for f in [moment_coords_quad, mvc_oracle, cramer_coords_quad] {
            assert!(close(&f(&sq, &Point2::zeros()).unwrap(), &[0.25; 4], 1e-15));
        }
    }

    #[test]
    fn edge_midpoint_reduces_to_affine() {
        for q in [
            builtin::conv_quad(),
            builtin::nonconv_quad(),
            builtin::biunit_square(),
        ] {
            let mid = (q.vertex(0) + q.vertex(1)) * 0.5;
            let c = moment_coords_quad(&q, &mid).unwrap();
            assert!(close(&c, &[0.5, 0.5, 0.0, 0.0], 1e-12), "{c:?}");
        }
    }

    #[test]
    fn oracle_agreement_on_examples() {
        let q = builtin::conv_quad();
        let p = Point2::new(0.25, 0.5);
        let m = moment_coords_quad(&q, &p).unwrap();
        assert!(m.max_abs_diff(&mvc_oracle(&q, &p).unwrap()) <= 1e-10);
        assert!(m.max_abs_diff(&cramer_coords_quad(&q, &p).unwrap()) <= 1e-10);

        let nc = builtin::nonconv_quad();
        for p in [
            Point2::new(1.2, 1.0),
            Point2::new(0.5, 0.5),
            Point2::new(1.1, 3.0),
        ] {
            let m = moment_coords_quad(&nc, &p).unwrap();
            assert!(m.max_abs_diff(&mvc_oracle(&nc, &p).unwrap()) <= 1e-10);
            assert!(m.max_abs_diff(&cramer_coords_quad(&nc, &p).unwrap()) <= 1e-10);
        }
    }

    #[test]
    fn kite_mirror_symmetry() {
        // Symmetric about the x-axis: v_2 and v_4 are mirror images.
        let kite =
            Quadrilateral::from_coords([[-1.0, 0.0], [0.0, -1.0], [2.0, 0.0], [0.0, 1.0]]).unwrap();
        for x in [-0.5, 0.0, 0.7, 1.5] {
            let c = mvc_oracle(&kite, &Point2::new(x, 0.0)).unwrap();
            assert!((c[1] - c[3]).abs() <= 1e-15);
        }
    }

    #[test]
    fn cramer_vertex_is_kronecker() {
        for q in [builtin::conv_quad(), builtin::nonconv_quad()] {
            let c = cramer_coords_quad(&q, q.vertex(1)).unwrap();
            assert!(close(&c, &[0.0, 1.0, 0.0, 0.0], 1e-12), "{c:?}");
        }
    }

    #[test]
    fn triangle_examples() {
        let tri = [
            Point2::new(0.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(0.0, 3.0),
        ];
        let c = triangle_barycentric(&tri, &Point2::new(1.0, 1.0)).unwrap();
        assert!(close(&c, &[1.0 / 3.0; 3], 1e-15));
        assert!(close(
            &triangle_barycentric(&tri, &tri[1]).unwrap(),
            &[0.0, 1.0, 0.0],
            0.0
        ));
        let out = triangle_barycentric(&tri, &Point2::new(4.0, 1.0)).unwrap();
        assert!(out.min_weight() < 0.0);
        assert!(out.partition_error() <= 1e-15);
        let flat = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 2.0),
        ];
        assert!(matches!(
            triangle_barycentric(&flat, &Point2::zeros()),
            Err(Error::DegenerateTriangle { .. })
        ));
    }

    #[test]
    fn domain_errors() {
        let q = builtin::conv_quad();
        let outside = Point2::new(3.0, 3.0);
        assert_eq!(moment_coords_quad(&q, &outside), Err(Error::OutsideDomain));
        assert_eq!(mvc_oracle(&q, &outside), Err(Error::OutsideDomain));
        assert_eq!(cramer_coords_quad(&q, &outside), Err(Error::OutsideDomain));
        assert_eq!(
            mvc_oracle(&q, &Point2::new(0.5, 0.0)),
            Err(Error::OnBoundary)
        );
        assert_eq!(mvc_oracle(&q, q.vertex(2)), Err(Error::OnBoundary));
    }

    #[test]
    fn vertex_short_circuit() {
        let q = builtin::nonconv_quad();
        for i in 0..4 {
            assert_eq!(
                moment_coords_quad(&q, q.vertex(i)).unwrap(),
                BaryCoords::kronecker(4, i)
            );
        }
    }
}
