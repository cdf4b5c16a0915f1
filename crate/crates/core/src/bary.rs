use std::ops::Deref;

use nalgebra::SVector;

/// Partition of unity must hold to this absolute tolerance.
pub const PARTITION_TOL: f64 = 1e-12;
/// Numerical slack allowed below zero.
pub const NONNEG_TOL: f64 = 1e-12;
/// Linear precision tolerance, relative to the geometry diameter.
pub const LINEAR_PRECISION_TOL: f64 = 1e-10;

/// Generalized barycentric coordinates: one weight per vertex (or node).
#[derive(Debug, Clone, PartialEq)]
pub struct BaryCoords {
    weights: Vec<f64>,
}

impl BaryCoords {
    pub fn new(weights: Vec<f64>) -> Self {
        Self { weights }
    }

    /// The coordinate vector of vertex `index`: one at `index`, zero elsewhere.
    pub fn kronecker(len: usize, index: usize) -> Self {
        let mut weights = vec![0.0; len];
        weights[index] = 1.0;
        Self { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.weights
    }

    /// `|sum(phi) - 1|`.
    pub fn partition_error(&self) -> f64 {
        (self.weights.iter().sum::<f64>() - 1.0).abs()
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `|sum(phi_i v_i) - p|_inf` for vertices in any dimension.
    pub fn linear_precision_error<const D: usize>(
        &self,
        vertices: &[SVector<f64, D>],
        p: &SVector<f64, D>,
    ) -> f64 {
        let reproduced = self
            .weights
            .iter()
            .zip(vertices)
            .fold(SVector::<f64, D>::zeros(), |acc, (w, v)| acc + v * *w);
        (reproduced - p).amax()
    }

    /// `|phi - other|_inf`.
    pub fn max_abs_diff(&self, other: &BaryCoords) -> f64 {
        assert_eq!(self.len(), other.len(), "coordinate lengths differ");
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Checks partition of unity, nonnegativity and linear precision at the
    /// default tolerances (`diameter` scales the linear-precision check).
    pub fn satisfies_gbc<const D: usize>(
        &self,
        vertices: &[SVector<f64, D>],
        p: &SVector<f64, D>,
        diameter: f64,
    ) -> bool {
        self.weights.iter().all(|w| w.is_finite())
            && self.partition_error() <= PARTITION_TOL
            && self.min_weight() >= -NONNEG_TOL
            && self.linear_precision_error(vertices, p) <= LINEAR_PRECISION_TOL * diameter
    }
}

impl Deref for BaryCoords {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.weights
    }
}

impl From<Vec<f64>> for BaryCoords {
    fn from(weights: Vec<f64>) -> Self {
        Self { weights }
    }
}
