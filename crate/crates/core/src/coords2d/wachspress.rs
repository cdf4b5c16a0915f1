use super::{solve_with_row, MomentRow};
use crate::bary::BaryCoords;
use crate::error::{Error, Result};
use crate::geometry::{signed_area, Point2, PointLocation, Quadrilateral};

fn require_convex(quad: &Quadrilateral) -> Result<()> {
    if quad.is_convex() {
        Ok(())
    } else {
        Err(Error::NotConvex)
    }
}

/// `(rho_1, -rho_2, rho_3, -rho_4)` with
/// `rho_i = l_{i,i-1} l_{i,i+1} h_{i-1}(p) h_i(p)`.
///
/// `rho_i` vanishes exactly on the two edges incident to vertex `i`.
pub fn wachspress_row(quad: &Quadrilateral, p: &Point2) -> Result<MomentRow> {
    require_convex(quad)?;
    let mut h = [0.0; 4];
    for (i, hi) in h.iter_mut().enumerate() {
        *hi = quad.edge_distance(i, p)?;
    }
    let magnitudes = std::array::from_fn(|i| {
        let prev = (i + 3) % 4;
        quad.edge_length(prev) * quad.edge_length(i) * h[prev] * h[i]
    });
    Ok(MomentRow::from_magnitudes(magnitudes))
}

/// Wachspress coordinates: the unique solution of `[V; 1; rho(p)] phi = [p; 1; 0]`.
pub fn wachspress_coords_quad(quad: &Quadrilateral, p: &Point2) -> Result<BaryCoords> {
    require_convex(quad)?;
    match quad.locate(p) {
        PointLocation::Exterior => Err(Error::OutsideDomain),
        PointLocation::AtVertex(i) => Ok(BaryCoords::kronecker(4, i)),
        _ => solve_with_row(quad, p, &wachspress_row(quad, p)?),
    }
}

/// Wachspress coordinates from triangle areas:
/// `w_i = A(v_{i-1}, v_i, v_{i+1}) / (A(p, v_{i-1}, v_i) A(p, v_i, v_{i+1}))`.
///
/// Only defined strictly inside, where no denominator vanishes.
pub fn wachspress_oracle(quad: &Quadrilateral, p: &Point2) -> Result<BaryCoords> {
    require_convex(quad)?;
    match quad.locate(p) {
        PointLocation::Interior => {}
        PointLocation::Exterior => return Err(Error::OutsideDomain),
        _ => return Err(Error::OnBoundary),
    }
    let v = |i: usize| quad.vertex(i);
    let w: [f64; 4] = std::array::from_fn(|i| {
        let (prev, next) = (i + 3, i + 1);
        signed_area(v(prev), v(i), v(next))
            / (signed_area(p, v(prev), v(i)) * signed_area(p, v(i), v(next)))
    });
    let total: f64 = w.iter().sum();
    Ok(BaryCoords::new(w.iter().map(|x| x / total).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn row_on_square_center() {
        let r = wachspress_row(&builtin::biunit_square(), &Point2::zeros()).unwrap();
        assert!(close(r.entries(), &[4.0, -4.0, 4.0, -4.0], 1e-15));
    }

    #[test]
    fn row_vanishes_on_incident_edges() {
        let q = builtin::conv_quad();
        let p = Point2::new(0.3, 0.0);
        let r = wachspress_row(&q, &p).unwrap();
        assert_eq!(r.entries()[0].abs(), 0.0);
        assert_eq!(r.entries()[1].abs(), 0.0);
        assert!(r.entries()[2] > 0.0 && r.entries()[3] < 0.0);
    }

    #[test]
    fn row_on_example_quad() {
        let q = builtin::conv_quad();
        let p = Point2::new(0.5, 1.0);
        let r = wachspress_row(&q, &p).unwrap();
        // Edge lengths 1, sqrt(16.25), sqrt(4.25), 2; distances from (0.5, 1).
        let l = [1.0, 16.25f64.sqrt(), 4.25f64.sqrt(), 2.0];
        let h = [1.0, 1.5 / 16.25f64.sqrt(), 1.5 / 4.25f64.sqrt(), 0.5];
        let expected: Vec<f64> = (0..4)
            .map(|i| {
                let prev = (i + 3) % 4;
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                s * l[prev] * l[i] * h[prev] * h[i]
            })
            .collect();
        assert!(
            close(r.entries(), &expected, 1e-14),
            "{r:?} vs {expected:?}"
        );
    }

    #[test]
    fn example_quad_fixture() {
        let q = builtin::conv_quad();
        let p = Point2::new(0.5, 1.0);
        let expected = [0.3, 0.4, 0.2, 0.1];
        assert!(close(
            &wachspress_coords_quad(&q, &p).unwrap(),
            &expected,
            1e-12
        ));
        assert!(close(&wachspress_oracle(&q, &p).unwrap(), &expected, 1e-12));
    }

    #[test]
    fn square_center_and_vertices() {
        let sq = builtin::biunit_square();
        assert!(close(
            &wachspress_coords_quad(&sq, &Point2::zeros()).unwrap(),
            &[0.25; 4],
            1e-15
        ));
        assert!(close(
            &wachspress_oracle(&sq, &Point2::zeros()).unwrap(),
            &[0.25; 4],
            1e-15
        ));
        let q = builtin::conv_quad();
        assert_eq!(
            wachspress_coords_quad(&q, q.vertex(2)).unwrap(),
            BaryCoords::kronecker(4, 2)
        );
    }

    #[test]
    fn nonconvex_refused() {
        let nc = builtin::nonconv_quad();
        let p = Point2::new(1.2, 1.0);
        assert_eq!(wachspress_row(&nc, &p), Err(Error::NotConvex));
        assert_eq!(wachspress_coords_quad(&nc, &p), Err(Error::NotConvex));
        assert_eq!(wachspress_oracle(&nc, &p), Err(Error::NotConvex));
    }

    #[test]
    fn oracle_boundary_and_exterior() {
        let q = builtin::conv_quad();
        assert_eq!(
            wachspress_oracle(&q, &Point2::new(0.5, 0.0)),
            Err(Error::OnBoundary)
        );
        assert_eq!(
            wachspress_oracle(&q, &Point2::new(-1.0, 0.5)),
            Err(Error::OutsideDomain)
        );
        assert_eq!(
            wachspress_coords_quad(&q, &Point2::new(-1.0, 0.5)),
            Err(Error::OutsideDomain)
        );
    }
}
