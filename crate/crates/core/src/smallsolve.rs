//! Dense square solves for the small moment systems (sizes 3 to 16).
//!
//! Gaussian elimination with partial (row) pivoting. A pivot smaller than
//! [`PIVOT_THRESHOLD`] times the largest matrix entry is reported as
//! [`Error::SingularMatrix`]; for the moment systems this means the geometry
//! is degenerate or a sign-pattern assumption was violated.

use crate::error::{Error, Result};

/// Relative pivot threshold, measured against `max |a_ij|`.
pub const PIVOT_THRESHOLD: f64 = 1e-13;

/// Residual bound checked in debug builds: `|Ax - b|_inf <= RESIDUAL_BOUND * (1 + |b|_inf)`.
pub const RESIDUAL_BOUND: f64 = 1e-10;

/// A square system `A x = b` with `A` stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareSystem {
    dim: usize,
    matrix: Vec<f64>,
    rhs: Vec<f64>,
}

impl SquareSystem {
    /// All-zero system of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            matrix: vec![0.0; dim * dim],
            rhs: vec![0.0; dim],
        }
    }

    pub fn new(dim: usize, matrix: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::MalformedSystem(
                "dimension must be at least 1".into(),
            ));
        }
        if matrix.len() != dim * dim || rhs.len() != dim {
            return Err(Error::MalformedSystem(format!(
                "expected {dim}x{dim} matrix and {dim} right-hand side entries, got {} and {}",
                matrix.len(),
                rhs.len()
            )));
        }
        Ok(Self { dim, matrix, rhs })
    }

    /// Builds a system from explicit rows.
    pub fn from_rows(rows: &[&[f64]], rhs: &[f64]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::MalformedSystem("rows must all have length n".into()));
        }
        Self::new(dim, rows.concat(), rhs.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.matrix[row * self.dim + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.matrix[row * self.dim..(row + 1) * self.dim]
    }

    pub fn row_mut(&mut self, row: usize) -> &mut [f64] {
        &mut self.matrix[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn rhs_mut(&mut self) -> &mut [f64] {
        &mut self.rhs
    }

    /// `|A x - b|_inf`.
    pub fn residual_norm(&self, x: &[f64]) -> f64 {
        (0..self.dim)
            .map(|r| {
                let ax: f64 = self.row(r).iter().zip(x).map(|(a, xi)| a * xi).sum();
                (ax - self.rhs[r]).abs()
            })
            .fold(0.0, f64::max)
    }

    fn max_abs_entry(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, a| m.max(a.abs()))
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve_square(system: &SquareSystem) -> Result<Vec<f64>> {
    let n = system.dim;
    let mut a = system.matrix.clone();
    let mut b = system.rhs.clone();
    if a.iter().chain(&b).any(|v| !v.is_finite()) {
        return Err(Error::MalformedSystem("non-finite entry".into()));
    }

    let threshold = PIVOT_THRESHOLD * system.max_abs_entry();

    for col in 0..n {
        // Largest |a| in this column at or below the diagonal; first one wins ties.
        let mut pivot_row = col;
        let mut pivot_abs = a[col * n + col].abs();
        for r in col + 1..n {
            let v = a[r * n + col].abs();
            if v > pivot_abs {
                pivot_row = r;
                pivot_abs = v;
            }
        }
        if !(pivot_abs > threshold) {
            return Err(Error::SingularMatrix {
                column: col,
                pivot: pivot_abs,
            });
        }
        if pivot_row != col {
            for c in 0..n {
                a.swap(col * n + c, pivot_row * n + c);
            }
            b.swap(col, pivot_row);
        }

        let pivot = a[col * n + col];
        for r in col + 1..n {
            let factor = a[r * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            a[r * n + col] = 0.0;
            for c in col + 1..n {
                a[r * n + c] -= factor * a[col * n + c];
            }
            b[r] -= factor * b[col];
        }
    }

    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|c| a[r * n + c] * x[c]).sum();
        x[r] = (b[r] - tail) / a[r * n + r];
    }

    debug_assert!(
        system.residual_norm(&x)
            <= RESIDUAL_BOUND * (1.0 + system.rhs.iter().fold(0.0_f64, |m, v| m.max(v.abs()))),
        "residual {:e} exceeds bound",
        system.residual_norm(&x)
    );
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity() {
        let sys = SquareSystem::from_rows(
            &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            &[1.0, 2.0, 3.0],
        )
        .unwrap();
        assert_eq!(solve_square(&sys).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn padded_diagonal() {
        let sys = SquareSystem::from_rows(
            &[&[2.0, 0.0, 0.0], &[0.0, 4.0, 0.0], &[0.0, 0.0, 1.0]],
            &[2.0, 4.0, 5.0],
        )
        .unwrap();
        assert_eq!(solve_square(&sys).unwrap(), vec![1.0, 1.0, 5.0]);
    }

    #[test]
    fn needs_pivoting() {
        let sys = SquareSystem::from_rows(
            &[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 3.0]],
            &[7.0, 8.0, 9.0],
        )
        .unwrap();
        assert_eq!(solve_square(&sys).unwrap(), vec![8.0, 7.0, 3.0]);
    }

    #[test]
    fn recovers_known_solution_8x8() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = 8;
            // Diagonally dominated random matrix keeps the condition number modest.
            let mut matrix: Vec<f64> = (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect();
            for i in 0..n {
                matrix[i * n + i] += 4.0;
            }
            let x_true: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
            let rhs: Vec<f64> = (0..n)
                .map(|r| (0..n).map(|c| matrix[r * n + c] * x_true[c]).sum())
                .collect();
            let sys = SquareSystem::new(n, matrix, rhs).unwrap();
            let x = solve_square(&sys).unwrap();
            for (a, b) in x.iter().zip(&x_true) {
                assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn singular_reported() {
        let sys = SquareSystem::from_rows(
            &[&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0], &[0.0, 1.0, 1.0]],
            &[1.0, 2.0, 3.0],
        )
        .unwrap();
        assert!(matches!(
            solve_square(&sys),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn zero_matrix_is_singular() {
        let sys = SquareSystem::zeros(3);
        assert!(matches!(
            solve_square(&sys),
            Err(Error::SingularMatrix { column: 0, .. })
        ));
    }

    #[test]
    fn malformed_shapes_rejected() {
        assert!(SquareSystem::new(3, vec![0.0; 8], vec![0.0; 3]).is_err());
        assert!(SquareSystem::new(0, vec![], vec![]).is_err());
        assert!(SquareSystem::from_rows(&[&[1.0, 2.0], &[1.0]], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn nan_rejected() {
        let sys = SquareSystem::from_rows(&[&[f64::NAN, 0.0], &[0.0, 1.0]], &[1.0, 1.0]).unwrap();
        assert!(matches!(solve_square(&sys), Err(Error::MalformedSystem(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn well_conditioned(n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
            (
                prop::collection::vec(-1.0..1.0f64, n * n),
                prop::collection::vec(-5.0..5.0f64, n),
            )
                .prop_map(move |(mut m, b)| {
                    for i in 0..n {
                        m[i * n + i] += if m[i * n + i] >= 0.0 {
                            n as f64
                        } else {
                            -(n as f64)
                        };
                    }
                    (m, b)
                })
        }

        proptest! {
            #[test]
            fn residual_bound_holds((m, b) in well_conditioned(6)) {
                let sys = SquareSystem::new(6, m, b.clone()).unwrap();
                let x = solve_square(&sys).unwrap();
                let bnorm = b.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                prop_assert!(sys.residual_norm(&x) <= RESIDUAL_BOUND * (1.0 + bnorm));
            }

            #[test]
            fn row_permutation_invariant(
                (m, b) in well_conditioned(5),
                perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
            ) {
                let n = 5;
                let x = solve_square(&SquareSystem::new(n, m.clone(), b.clone()).unwrap()).unwrap();
                let mut pm = Vec::with_capacity(n * n);
                let mut pb = Vec::with_capacity(n);
                for &r in &perm {
                    pm.extend_from_slice(&m[r * n..(r + 1) * n]);
                    pb.push(b[r]);
                }
                let y = solve_square(&SquareSystem::new(n, pm, pb).unwrap()).unwrap();
                for (a, c) in x.iter().zip(&y) {
                    prop_assert!((a - c).abs() <= 1e-12 * (1.0 + a.abs()));
                }
            }
        }
    }
}
