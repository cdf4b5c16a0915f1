//! Geometry input: JSON files or compiled-in builtins.

use std::path::Path;

use moment_coords::builtin;
use moment_coords::geometry::{validate_geometry, GeometryInput};
use moment_coords::{Hexahedron, NodeSet1D, Point2, Point3, Quadrilateral};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const BUILTINS: [&str; 5] = [
    "biunit-square",
    "conv-quad",
    "nonconv-quad",
    "conv-hex",
    "biunit-cube",
];

/// On-disk geometry description.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GeometrySpec {
    Interval { nodes: Vec<f64> },
    Quad { vertices: Vec<[f64; 2]> },
    Hex { vertices: Vec<[f64; 3]> },
}

/// A validated geometry.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Geometry {
    Interval(NodeSet1D),
    Quad(Quadrilateral),
    Hex(Hexahedron),
}

impl Geometry {
    pub fn kind(&self) -> &'static str {
        match self {
            Geometry::Interval(_) => "interval",
            Geometry::Quad(_) => "quad",
            Geometry::Hex(_) => "hex",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Geometry::Interval(_) => 1,
            Geometry::Quad(_) => 2,
            Geometry::Hex(_) => 3,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Geometry::Interval(n) => n.len(),
            Geometry::Quad(_) => 4,
            Geometry::Hex(_) => 8,
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Geometry::Interval(n) => n.length(),
            Geometry::Quad(q) => q.diameter(),
            Geometry::Hex(h) => h.diameter(),
        }
    }

    /// Vertex coordinates in input order, one `Vec` of length `dim` per vertex.
    pub fn vertices(&self) -> Vec<Vec<f64>> {
        match self {
            Geometry::Interval(n) => n.nodes().iter().map(|x| vec![*x]).collect(),
            Geometry::Quad(q) => {
                let mut v: Vec<Vec<f64>> = q.vertices().iter().map(|p| vec![p.x, p.y]).collect();
                if q.was_reversed() {
                    v.swap(1, 3);
                }
                v
            }
            Geometry::Hex(h) => h.vertices().iter().map(|p| vec![p.x, p.y, p.z]).collect(),
        }
    }

    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Geometry::Interval(n) => (vec![n.first()], vec![n.last()]),
            Geometry::Quad(q) => {
                let (lo, hi) = q.bounding_box();
                (vec![lo.x, lo.y], vec![hi.x, hi.y])
            }
            Geometry::Hex(h) => {
                let (lo, hi) = h.bounding_box();
                (vec![lo.x, lo.y, lo.z], vec![hi.x, hi.y, hi.z])
            }
        }
    }
}

fn invalid(report: moment_coords::geometry::ValidationReport) -> CliError {
    CliError::Input(moment_coords::Error::InvalidGeometry(report.violations).to_string())
}

impl TryFrom<GeometrySpec> for Geometry {
    type Error = CliError;

    fn try_from(spec: GeometrySpec) -> CliResult<Self> {
        let input = match spec {
            GeometrySpec::Interval { nodes } => GeometryInput::Interval(nodes),
            GeometrySpec::Quad { vertices } => {
                GeometryInput::Quad(vertices.iter().map(|[x, y]| Point2::new(*x, *y)).collect())
            }
            GeometrySpec::Hex { vertices } => GeometryInput::Hex(
                vertices
                    .iter()
                    .map(|[x, y, z]| Point3::new(*x, *y, *z))
                    .collect(),
            ),
        };
        let report = validate_geometry(&input);
        if !report.is_ok() {
            return Err(invalid(report));
        }
        Ok(match input {
            GeometryInput::Interval(nodes) => Geometry::Interval(NodeSet1D::new(nodes)?),
            GeometryInput::Quad(v) => Geometry::Quad(Quadrilateral::new([v[0], v[1], v[2], v[3]])?),
            GeometryInput::Hex(v) => Geometry::Hex(Hexahedron::new(
                v.try_into().expect("validated vertex count"),
            )?),
        })
    }
}

pub fn builtin_geometry(name: &str) -> Option<Geometry> {
    Some(match name {
        "biunit-square" => Geometry::Quad(builtin::biunit_square()),
        "conv-quad" => Geometry::Quad(builtin::conv_quad()),
        "nonconv-quad" => Geometry::Quad(builtin::nonconv_quad()),
        "conv-hex" => Geometry::Hex(builtin::conv_hex()),
        "biunit-cube" => Geometry::Hex(builtin::biunit_cube()),
        _ => return None,
    })
}

pub fn parse_geometry(json: &str) -> CliResult<Geometry> {
    let spec: GeometrySpec =
        serde_json::from_str(json).map_err(|e| CliError::Input(format!("geometry: {e}")))?;
    spec.try_into()
}

/// Resolves a builtin name, falling back to a JSON file path.
pub fn load_geometry(arg: &str) -> CliResult<Geometry> {
    if let Some(g) = builtin_geometry(arg) {
        return Ok(g);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "`{arg}` is neither a file nor a builtin ({})",
            BUILTINS.join(", ")
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_geometry(&text)
}

/// Parses `x,y[,z]` into exactly `dim` finite numbers.
pub fn parse_point(text: &str, dim: usize) -> CliResult<Vec<f64>> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Input(format!("point: `{s}` is not a finite number")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    if values.len() != dim {
        return Err(CliError::Input(format!(
            "point: expected {dim} coordinates, found {}",
            values.len()
        )));
    }
    Ok(values)
}
