use clap::ValueEnum;
use moment_coords::coords1d::{hat_oracle, moment_coords_1d};
use moment_coords::coords2d::{
    cramer_coords_quad, moment_coords_quad, mvc_oracle, wachspress_coords_quad, wachspress_oracle,
};
use moment_coords::coords3d::{moment_coords_hex, Frame3};
use moment_coords::{Point2, Point3, PointLocation};

use crate::error::{CliError, CliResult};
use crate::spec::Geometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Moment,
    Wachspress,
    MvcOracle,
    WachspressOracle,
    Cramer,
    Hat,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Moment => "moment",
            Method::Wachspress => "wachspress",
            Method::MvcOracle => "mvc-oracle",
            Method::WachspressOracle => "wachspress-oracle",
            Method::Cramer => "cramer",
            Method::Hat => "hat",
        }
    }

    pub fn supports(&self, geometry: &Geometry) -> bool {
        match geometry {
            Geometry::Interval(_) => matches!(self, Method::Moment | Method::Hat),
            Geometry::Quad(_) => !matches!(self, Method::Hat),
            Geometry::Hex(_) => matches!(self, Method::Moment),
        }
    }

    pub fn ensure_supports(&self, geometry: &Geometry) -> CliResult<()> {
        if self.supports(geometry) {
            Ok(())
        } else {
            Err(CliError::Input(format!(
                "method {} does not apply to {} geometry",
                self.name(),
                geometry.kind()
            )))
        }
    }
}

/// Coordinates at one point, in input vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub coords: Vec<f64>,
    pub location: Option<PointLocation>,
    pub frame: Option<Frame3>,
}

/// Evaluates `method` at `point`; the method must support the geometry.
pub fn evaluate(
    geometry: &Geometry,
    method: Method,
    point: &[f64],
) -> moment_coords::Result<Evaluation> {
    match geometry {
        Geometry::Interval(nodes) => {
            let c = match method {
                Method::Hat => hat_oracle(nodes, point[0])?,
                _ => moment_coords_1d(nodes, point[0])?,
            };
            Ok(Evaluation {
                coords: c.into_vec(),
                location: None,
                frame: None,
            })
        }
        Geometry::Quad(q) => {
            let p = Point2::new(point[0], point[1]);
            let c = match method {
                Method::Wachspress => wachspress_coords_quad(q, &p)?,
                Method::MvcOracle => mvc_oracle(q, &p)?,
                Method::WachspressOracle => wachspress_oracle(q, &p)?,
                Method::Cramer => cramer_coords_quad(q, &p)?,
                _ => moment_coords_quad(q, &p)?,
            };
            let mut coords = c.into_vec();
            if q.was_reversed() {
                coords.swap(1, 3);
            }
            Ok(Evaluation {
                coords,
                location: Some(q.locate(&p)),
                frame: None,
            })
        }
        Geometry::Hex(h) => {
            let c = moment_coords_hex(h, &Point3::new(point[0], point[1], point[2]))?;
            Ok(Evaluation {
                coords: c.coords.into_vec(),
                location: Some(c.location),
                frame: c.frame,
            })
        }
    }
}
