//! JSON and CSV rendering with 17 significant digits.

use moment_coords::coords3d::Frame3;
use moment_coords::PointLocation;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::method::{Evaluation, Method};
use crate::spec::Geometry;

/// Scientific notation with 17 significant digits (round-trip exact).
pub fn fmt_num(x: f64) -> String {
    // Print -0.0 as 0.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// A number serialized through [`fmt_num`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(fmt_num(self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

fn nums(xs: &[f64]) -> Vec<Num> {
    xs.iter().copied().map(Num).collect()
}

pub fn location_label(location: &PointLocation) -> String {
    match location {
        PointLocation::Interior => "interior".into(),
        PointLocation::OnEdge { edge, .. } => format!("edge {edge}"),
        PointLocation::OnFace(f) => format!("face {f}"),
        PointLocation::AtVertex(i) => format!("vertex {i}"),
        PointLocation::Exterior => "exterior".into(),
    }
}

#[derive(Debug, Serialize)]
pub struct FrameRecord {
    pub strategy: &'static str,
    /// Unit axes `r1, r2, r3`.
    pub axes: Vec<Vec<Num>>,
}

impl From<&Frame3> for FrameRecord {
    fn from(f: &Frame3) -> Self {
        Self {
            strategy: f.strategy().name(),
            axes: (0..3).map(|j| nums(f.axis(j).as_slice())).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EvalRecord {
    pub kind: &'static str,
    pub method: &'static str,
    pub point: Vec<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    pub coordinates: Vec<Num>,
    /// `gradients[i][j] = d phi_i / d x_j`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gradients: Option<Vec<Vec<Num>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameRecord>,
}

impl EvalRecord {
    pub fn new(
        geometry: &Geometry,
        method: Method,
        point: &[f64],
        eval: &Evaluation,
        gradients: Option<&[Vec<f64>]>,
    ) -> Self {
        Self {
            kind: geometry.kind(),
            method: method.name(),
            point: nums(point),
            location: eval.location.as_ref().map(location_label),
            coordinates: nums(&eval.coords),
            gradients: gradients.map(|g| g.iter().map(|row| nums(row)).collect()),
            frame: eval.frame.as_ref().map(FrameRecord::from),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records always serialize")
    }
}

const AXES: [&str; 3] = ["x", "y", "z"];

/// `x,y[,z],phi1..phin[,dphi1_dx,dphi1_dy,..]`.
pub fn csv_header(dim: usize, n: usize, derivatives: bool) -> String {
    let mut cols: Vec<String> = AXES[..dim].iter().map(|s| s.to_string()).collect();
    cols.extend((1..=n).map(|i| format!("phi{i}")));
    if derivatives {
        for i in 1..=n {
            cols.extend(AXES[..dim].iter().map(|a| format!("dphi{i}_d{a}")));
        }
    }
    cols.join(",")
}
