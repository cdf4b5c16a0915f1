//! Moment coordinates on a 1D node set.
//!
//! For `n` sorted nodes and a query `x` in `[x_0, x_{n-1}]`, the nodes of the
//! containing interval `[x_k, x_{k+1}]` are moved to the front, giving the
//! relabeling `(k, k+1, 0, .., k-1, k+2, .., n-1)`. In that order the system
//!
//! ```text
//! [ 1        ...  1                         ]        [ 1 ]
//! [ x_j - x  ...                            ] phi =  [ 0 ]
//! [ (-1)^j |x_j - x|  ...                   ]        [ 0 ]
//! [ adjacency rows on positions (2,3), (3,4), .., (n-2,n-1) ]  [ 0 ]
//! ```
//!
//! is square, and its solution is the pair of hat-function values on the
//! containing interval.
//!
//! The matrix is singular exactly when no node at position `j >= 2` has
//! `(-1)^j (x_j - x)` of the same sign as the first position's offset side
//! (checked by [`order_is_regular`]). That happens for `k = 1` with `n <= 4`;
//! there the two interval nodes are swapped to `(k+1, k, ..)`.

use crate::bary::BaryCoords;
use crate::error::{Error, Result};
use crate::geometry::NodeSet1D;
use crate::smallsolve::{solve_square, SquareSystem};

/// Query points may overshoot the node range by this fraction of its length.
const DOMAIN_REL_TOL: f64 = 1e-12;

/// The assembled 1D moment system for one query point.
#[derive(Debug, Clone, PartialEq)]
pub struct Moment1DSystem {
    pub query: f64,
    /// Zero-based index `k` of the containing interval `[x_k, x_{k+1}]`.
    pub interval: usize,
    /// `permutation[j]` is the original node index at position `j`.
    pub permutation: Vec<usize>,
    pub system: SquareSystem,
}

impl Moment1DSystem {
    /// Maps a solution in permuted order back to original node order.
    pub fn unpermute(&self, permuted: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; permuted.len()];
        for (j, &orig) in self.permutation.iter().enumerate() {
            out[orig] = permuted[j];
        }
        out
    }
}

/// Clamps `x` into the node range, rejecting points clearly outside it.
fn checked_query(nodes: &NodeSet1D, x: f64) -> Result<f64> {
    let slack = DOMAIN_REL_TOL * nodes.length();
    if !x.is_finite() || x < nodes.first() - slack || x > nodes.last() + slack {
        return Err(Error::OutsideDomain);
    }
    Ok(x.clamp(nodes.first(), nodes.last()))
}

/// Index `k` with `x` in `[x_k, x_{k+1}]`, preferring the lower interval on ties.
fn containing_interval(nodes: &[f64], x: f64) -> usize {
    let n = nodes.len();
    (0..n - 1).find(|&k| x <= nodes[k + 1]).unwrap_or(n - 2)
}

/// Whether the relabeling `order` of a query in interval `k` gives a
/// nonsingular system.
///
/// Eliminating the adjacency rows leaves a 3x3 system whose determinant is
/// a positive multiple of `sum_j (|o_j| + s (-1)^j o_j)` over positions
/// `j >= 2`, with `o_j` the node offset, `s = 1` when the left interval node
/// comes first and `s = -1` otherwise. Every term is nonnegative, so it suffices that one is
/// strictly positive; this depends only on which side of `x` each node lies.
pub fn order_is_regular(order: &[usize], k: usize) -> bool {
    let left_first = order[0] == k;
    order.iter().enumerate().skip(2).any(|(j, &orig)| {
        let right = orig > k + 1;
        let even = j % 2 == 0;
        // Right node at even position (or left at odd) when the left node leads.
        (right == even) == left_first
    })
}

pub fn build_system_1d(nodes: &NodeSet1D, x: f64) -> Result<Moment1DSystem> {
    let x = checked_query(nodes, x)?;
    let xs = nodes.nodes();
    let n = xs.len();
    let k = containing_interval(xs, x);

    let mut permutation = vec![k, k + 1];
    permutation.extend((0..n).filter(|&i| i != k && i != k + 1));
    if !order_is_regular(&permutation, k) {
        permutation.swap(0, 1);
    }

    let mut system = SquareSystem::zeros(n);
    system.rhs_mut()[0] = 1.0;
    for (j, &orig) in permutation.iter().enumerate() {
        let offset = xs[orig] - x;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        system.set(0, j, 1.0);
        system.set(1, j, offset);
        system.set(2, j, sign * offset.abs());
    }
    for (row, j) in (3..n).zip(2..n - 1) {
        system.set(row, j, 1.0);
        system.set(row, j + 1, 1.0);
    }

    Ok(Moment1DSystem {
        query: x,
        interval: k,
        permutation,
        system,
    })
}

/// Solves the 1D moment system; the result coincides with the hat functions.
pub fn moment_coords_1d(nodes: &NodeSet1D, x: f64) -> Result<BaryCoords> {
    let sys = build_system_1d(nodes, x)?;
    let solution = solve_square(&sys.system)?;
    Ok(BaryCoords::new(sys.unpermute(&solution)))
}

/// Piecewise-linear nodal basis evaluated directly.
pub fn hat_oracle(nodes: &NodeSet1D, x: f64) -> Result<BaryCoords> {
    let x = checked_query(nodes, x)?;
    let xs = nodes.nodes();
    let k = containing_interval(xs, x);
    let mut weights = vec![0.0; xs.len()];
    let left = (xs[k + 1] - x) / (xs[k + 1] - xs[k]);
    weights[k] = left;
    weights[k + 1] = 1.0 - left;
    Ok(BaryCoords::new(weights))
}
