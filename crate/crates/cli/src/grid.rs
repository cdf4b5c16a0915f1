//! Coordinates sampled on a regular grid over the bounding box.

use rayon::prelude::*;

use crate::gradient::fd_gradient;
use crate::method::{evaluate, Method};
use crate::output::{csv_header, fmt_num};
use crate::spec::Geometry;
use moment_coords::bary::{LINEAR_PRECISION_TOL, NONNEG_TOL, PARTITION_TOL};
use moment_coords::{Point2, Point3};

#[derive(Debug, Clone, Copy)]
pub struct GridOptions {
    pub resolution: usize,
    pub method: Method,
    pub derivatives: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridOutput {
    pub csv: String,
    pub rows: usize,
    /// Points inside the domain where evaluation failed.
    pub failures: usize,
    /// Rows blanked because the coordinates broke an invariant.
    pub invariant_violations: usize,
}

/// `N^dim` points of the bounding box in lexicographic order (first axis slowest).
pub fn grid_points(lo: &[f64], hi: &[f64], n: usize) -> Vec<Vec<f64>> {
    let dim = lo.len();
    let coord =
        |axis: usize, k: usize| lo[axis] + (hi[axis] - lo[axis]) * k as f64 / (n - 1) as f64;
    (0..n.pow(dim as u32))
        .map(|mut idx| {
            let mut p = vec![0.0; dim];
            for axis in (0..dim).rev() {
                p[axis] = coord(axis, idx % n);
                idx /= n;
            }
            p
        })
        .collect()
}

pub fn contains(geometry: &Geometry, p: &[f64]) -> bool {
    match geometry {
        Geometry::Interval(nodes) => p[0] >= nodes.first() && p[0] <= nodes.last(),
        Geometry::Quad(q) => q.locate(&Point2::new(p[0], p[1])).is_inside(),
        Geometry::Hex(h) => h.locate(&Point3::new(p[0], p[1], p[2])).is_inside(),
    }
}

/// Worst violation of the coordinate invariants, or `None` if all hold.
pub fn invariant_violation(geometry: &Geometry, p: &[f64], coords: &[f64]) -> Option<String> {
    if coords.iter().any(|c| !c.is_finite()) {
        return Some("non-finite coordinate".into());
    }
    let partition = (coords.iter().sum::<f64>() - 1.0).abs();
    if partition > PARTITION_TOL {
        return Some(format!("partition of unity off by {partition:e}"));
    }
    let min = coords.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -NONNEG_TOL {
        return Some(format!("negative weight {min:e}"));
    }
    let verts = geometry.vertices();
    let precision = (0..p.len())
        .map(|j| {
            (coords
                .iter()
                .zip(&verts)
                .map(|(w, v)| w * v[j])
                .sum::<f64>()
                - p[j])
                .abs()
        })
        .fold(0.0, f64::max);
    if precision > LINEAR_PRECISION_TOL * geometry.diameter() {
        return Some(format!("linear precision off by {precision:e}"));
    }
    None
}

enum Row {
    Ok(Vec<f64>, Option<Vec<Vec<f64>>>),
    Failed,
    Invalid,
}

fn evaluate_row(geometry: &Geometry, opts: &GridOptions, p: &[f64]) -> Row {
    let Ok(eval) = evaluate(geometry, opts.method, p) else {
        return Row::Failed;
    };
    if invariant_violation(geometry, p, &eval.coords).is_some() {
        return Row::Invalid;
    }
    let grad = if opts.derivatives {
        match fd_gradient(geometry, opts.method, p) {
            Some(g) => Some(g),
            None => return Row::Failed,
        }
    } else {
        None
    };
    Row::Ok(eval.coords, grad)
}

/// Evaluates every grid point inside the domain; rows keep grid order
/// regardless of how the work is split across threads.
pub fn run_grid(geometry: &Geometry, opts: &GridOptions) -> GridOutput {
    let (lo, hi) = geometry.bounding_box();
    let points: Vec<Vec<f64>> = grid_points(&lo, &hi, opts.resolution)
        .into_iter()
        .filter(|p| contains(geometry, p))
        .collect();
    let rows: Vec<Row> = points
        .par_iter()
        .map(|p| evaluate_row(geometry, opts, p))
        .collect();

    let n = geometry.vertex_count();
    let dim = geometry.dim();
    let value_cols = n + if opts.derivatives { n * dim } else { 0 };
    let mut csv = csv_header(dim, n, opts.derivatives);
    csv.push('\n');
    let (mut failures, mut invariant_violations) = (0, 0);
    for (p, row) in points.iter().zip(&rows) {
        let mut fields: Vec<String> = p.iter().map(|x| fmt_num(*x)).collect();
        match row {
            Row::Ok(coords, grad) => {
                fields.extend(coords.iter().map(|x| fmt_num(*x)));
                if let Some(g) = grad {
                    fields.extend(g.iter().flatten().map(|x| fmt_num(*x)));
                }
            }
            Row::Failed | Row::Invalid => {
                if matches!(row, Row::Failed) {
                    failures += 1;
                } else {
                    invariant_violations += 1;
                }
                fields.extend(std::iter::repeat_n(String::new(), value_cols));
            }
        }
        csv.push_str(&fields.join(","));
        csv.push('\n');
    }
    GridOutput {
        csv,
        rows: points.len(),
        failures,
        invariant_violations,
    }
}
