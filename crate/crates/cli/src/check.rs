//! Seeded property suite over one geometry and method.

use std::fmt::Write;

use moment_coords::coords3d::{face_quad_coords, sign_pattern_ok};
use moment_coords::geometry::{HEX_EDGES, HEX_FACES};
use moment_coords::sampling::{interior_point_hex, interior_point_quad, point_on_face_hex};
use moment_coords::{Point3, PointLocation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};
use crate::method::{evaluate, Evaluation, Method};
use crate::spec::Geometry;

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub method: Method,
    pub samples: usize,
    pub seed: u64,
    /// Replaces every default bound (scaled by the diameter where relevant).
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checked: usize,
    /// Largest observed violation measure.
    pub worst: f64,
    pub bound: f64,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.worst <= self.bound
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub kind: &'static str,
    pub method: Method,
    pub results: Vec<PropertyResult>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "check {} geometry, method {}\n",
            self.kind,
            self.method.name()
        );
        for r in &self.results {
            let _ = writeln!(
                out,
                "{} {:<24} worst={:.3e} bound={:.3e} n={}",
                if r.passed() { "PASS" } else { "FAIL" },
                r.name,
                r.worst,
                r.bound,
                r.checked
            );
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        let passed = self.results.iter().filter(|r| r.passed()).count();
        let _ = writeln!(out, "{passed}/{} properties passed", self.results.len());
        out
    }
}

/// Accumulates the worst violation of one property.
struct Tracker {
    result: PropertyResult,
}

impl Tracker {
    fn new(name: &'static str, bound: f64) -> Self {
        Self {
            result: PropertyResult {
                name,
                checked: 0,
                worst: 0.0,
                bound,
            },
        }
    }

    fn record(&mut self, violation: f64) {
        self.result.checked += 1;
        // NaN counts as an unbounded violation.
        let v = if violation.is_nan() {
            f64::INFINITY
        } else {
            violation
        };
        self.result.worst = self.result.worst.max(v);
    }

    fn finish(self) -> PropertyResult {
        self.result
    }
}

struct Bounds {
    partition: f64,
    nonneg: f64,
    precision: f64,
    agreement: f64,
    reduction: f64,
}

impl Bounds {
    fn new(geometry: &Geometry, tol: Option<f64>) -> Self {
        let diam = geometry.diameter();
        let hex = matches!(geometry, Geometry::Hex(_));
        match tol {
            Some(t) => Self {
                partition: t,
                nonneg: t,
                precision: t * diam,
                agreement: t,
                reduction: t,
            },
            None => Self {
                partition: 1e-12,
                nonneg: if hex { 1e-10 } else { 1e-12 },
                precision: if hex { 1e-9 } else { 1e-10 } * diam,
                agreement: 1e-10,
                reduction: 1e-9,
            },
        }
    }
}

fn linear_precision(verts: &[Vec<f64>], p: &[f64], coords: &[f64]) -> f64 {
    (0..p.len())
        .map(|j| (coords.iter().zip(verts).map(|(w, v)| w * v[j]).sum::<f64>() - p[j]).abs())
        .fold(0.0, f64::max)
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn interior_sample(geometry: &Geometry, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match geometry {
        Geometry::Interval(n) => vec![rng.random_range(n.first()..=n.last())],
        Geometry::Quad(q) => {
            let p = interior_point_quad(q, rng);
            vec![p.x, p.y]
        }
        Geometry::Hex(h) => {
            let p = interior_point_hex(h, rng);
            vec![p.x, p.y, p.z]
        }
    }
}

/// The independent route each method is compared against.
fn reference_method(geometry: &Geometry, method: Method) -> Vec<Method> {
    match (geometry, method) {
        (Geometry::Interval(_), Method::Hat) => vec![Method::Moment],
        (Geometry::Interval(_), _) => vec![Method::Hat],
        (Geometry::Quad(_), Method::Moment) => vec![Method::MvcOracle, Method::Cramer],
        (Geometry::Quad(_), Method::Wachspress) => vec![Method::WachspressOracle],
        (Geometry::Quad(_), Method::WachspressOracle) => vec![Method::Wachspress],
        (Geometry::Quad(_), _) => vec![Method::Moment],
        (Geometry::Hex(_), _) => vec![],
    }
}

fn defined_on_boundary(method: Method) -> bool {
    !matches!(method, Method::MvcOracle | Method::WachspressOracle)
}

pub fn run_check(geometry: &Geometry, opts: &CheckOptions) -> CliResult<CheckReport> {
    opts.method.ensure_supports(geometry)?;
    if let Geometry::Quad(q) = geometry {
        let needs_convex = matches!(opts.method, Method::Wachspress | Method::WachspressOracle);
        if needs_convex && !q.is_convex() {
            return Err(CliError::Domain(
                "quadrilateral is not convex; Wachspress coordinates are not valid on it".into(),
            ));
        }
    }
    let method = opts.method;
    let bounds = Bounds::new(geometry, opts.tol);
    let verts = geometry.vertices();
    let n = geometry.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut notes = Vec::new();
    let mut results = Vec::new();

    let mut partition = Tracker::new("partition-of-unity", bounds.partition);
    let mut nonneg = Tracker::new("nonnegativity", bounds.nonneg);
    let mut precision = Tracker::new("linear-precision", bounds.precision);
    let mut agreement = Tracker::new("oracle-agreement", bounds.agreement);
    let mut sign = Tracker::new("sign-pattern", 0.0);
    let references = reference_method(geometry, method);
    for _ in 0..opts.samples {
        let p = interior_sample(geometry, &mut rng);
        let eval = match evaluate(geometry, method, &p) {
            Ok(e) => e,
            Err(e) => {
                notes.push(format!("evaluation failed at {p:?}: {e}"));
                for t in [&mut partition, &mut nonneg, &mut precision] {
                    t.record(f64::INFINITY);
                }
                continue;
            }
        };
        let c = &eval.coords;
        partition.record((c.iter().sum::<f64>() - 1.0).abs());
        nonneg.record(-c.iter().copied().fold(f64::INFINITY, f64::min));
        precision.record(linear_precision(&verts, &p, c));
        for &r in &references {
            let other = evaluate(geometry, r, &p).map(|e| e.coords);
            agreement.record(other.map_or(f64::INFINITY, |o| max_diff(c, &o)));
        }
        if let (Geometry::Hex(h), Some(frame)) = (geometry, &eval.frame) {
            let ok = sign_pattern_ok(&frame.vertex_coords(h), h.diameter());
            sign.record(if ok { 0.0 } else { 1.0 });
        }
    }
    results.extend([partition.finish(), nonneg.finish(), precision.finish()]);
    if !references.is_empty() {
        results.push(agreement.finish());
    }
    if matches!(geometry, Geometry::Hex(_)) {
        results.push(sign.finish());
    }

    if defined_on_boundary(method) {
        let mut kronecker = Tracker::new("kronecker-delta", bounds.reduction);
        for (i, v) in verts.iter().enumerate() {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            let got = evaluate(geometry, method, v).map(|ev| ev.coords);
            kronecker.record(got.map_or(f64::INFINITY, |g| max_diff(&g, &e)));
        }
        results.push(kronecker.finish());

        let edges: Vec<(usize, usize)> = match geometry {
            Geometry::Interval(_) => vec![],
            Geometry::Quad(_) => (0..4).map(|i| (i, (i + 1) % 4)).collect(),
            Geometry::Hex(_) => HEX_EDGES.to_vec(),
        };
        if !edges.is_empty() {
            let mut edge = Tracker::new("edge-reduction", bounds.reduction);
            for _ in 0..opts.samples.div_ceil(edges.len()).max(1) {
                for &(a, b) in &edges {
                    let t: f64 = rng.random_range(0.0..1.0);
                    let p: Vec<f64> = verts[a]
                        .iter()
                        .zip(&verts[b])
                        .map(|(x, y)| (1.0 - t) * x + t * y)
                        .collect();
                    let mut e = vec![0.0; n];
                    e[a] = 1.0 - t;
                    e[b] = t;
                    let got = evaluate(geometry, method, &p).map(|ev| ev.coords);
                    edge.record(got.map_or(f64::INFINITY, |g| max_diff(&g, &e)));
                }
            }
            results.push(edge.finish());
        }
    } else {
        notes.push(format!(
            "{} is undefined on the boundary; Kronecker and edge checks skipped",
            method.name()
        ));
    }

    if let Geometry::Hex(h) = geometry {
        let mut off_face = Tracker::new("facet-off-face-weights", bounds.agreement);
        let mut facet = Tracker::new("facet-reduction", bounds.reduction);
        for _ in 0..opts.samples.div_ceil(6).max(1) {
            for face in 0..6 {
                let p = point_on_face_hex(h, face, &mut rng);
                match facet_errors(h, &p, evaluate(geometry, method, &[p.x, p.y, p.z])) {
                    Some((off, on)) => {
                        off_face.record(off);
                        facet.record(on);
                    }
                    None => {
                        off_face.record(f64::INFINITY);
                        facet.record(f64::INFINITY);
                    }
                }
            }
        }
        results.extend([off_face.finish(), facet.finish()]);
    }

    Ok(CheckReport {
        kind: geometry.kind(),
        method,
        results,
        notes,
    })
}

/// `(max off-face weight, max face mismatch)` for a point on a face.
fn facet_errors(
    hex: &moment_coords::Hexahedron,
    p: &Point3,
    eval: moment_coords::Result<Evaluation>,
) -> Option<(f64, f64)> {
    let eval = eval.ok()?;
    let face = match eval.location? {
        PointLocation::OnFace(f) => f,
        // Sampled exactly at a corner: nothing to compare.
        PointLocation::AtVertex(_) => return Some((0.0, 0.0)),
        _ => return None,
    };
    let ids = HEX_FACES[face];
    let off = (0..8)
        .filter(|i| !ids.contains(i))
        .map(|i| eval.coords[i].abs())
        .fold(0.0, f64::max);
    let reduced = face_quad_coords(hex, face, p, eval.frame.as_ref()?).ok()?;
    let on = ids
        .iter()
        .zip(reduced.iter())
        .map(|(&i, r)| (eval.coords[i] - r).abs())
        .fold(0.0, f64::max);
    Some((off, on))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{builtin_geometry, parse_geometry};

    fn opts(method: Method, samples: usize) -> CheckOptions {
        CheckOptions {
            method,
            samples,
            seed: 7,
            tol: None,
        }
    }

    #[test]
    fn conv_quad_passes() {
        let g = builtin_geometry("conv-quad").unwrap();
        for m in [
            Method::Moment,
            Method::Wachspress,
            Method::Cramer,
            Method::MvcOracle,
        ] {
            let r = run_check(&g, &opts(m, 200)).unwrap();
            assert!(r.all_passed(), "{}", r.render());
        }
    }

    #[test]
    fn nonconvex_wachspress_refused() {
        let g = builtin_geometry("nonconv-quad").unwrap();
        let err = run_check(&g, &opts(Method::Wachspress, 10)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn hex_passes() {
        let g = builtin_geometry("conv-hex").unwrap();
        let r = run_check(&g, &opts(Method::Moment, 120)).unwrap();
        assert!(r.all_passed(), "{}", r.render());
        assert!(r.results.iter().any(|p| p.name == "facet-reduction"));
    }

    #[test]
    fn interval_passes() {
        let g = parse_geometry(r#"{"kind":"interval","nodes":[0,0.1,0.5,0.55,1]}"#).unwrap();
        let r = run_check(&g, &opts(Method::Moment, 200)).unwrap();
        assert!(r.all_passed(), "{}", r.render());
    }

    #[test]
    fn tiny_tolerance_fails() {
        let g = builtin_geometry("conv-quad").unwrap();
        let mut o = opts(Method::Moment, 50);
        o.tol = Some(0.0);
        let r = run_check(&g, &o).unwrap();
        assert!(!r.all_passed());
        assert!(r.render().contains("FAIL"));
    }

    #[test]
    fn same_seed_same_report() {
        let g = builtin_geometry("nonconv-quad").unwrap();
        let a = run_check(&g, &opts(Method::Moment, 50)).unwrap().render();
        let b = run_check(&g, &opts(Method::Moment, 50)).unwrap().render();
        assert_eq!(a, b);
    }
}
