//! Command-line plumbing for moment coordinates: geometry loading, pointwise
//! evaluation, grid sampling with finite-difference gradients, and a seeded
//! property check.

pub mod check;
pub mod error;
pub mod gradient;
pub mod grid;
pub mod method;
pub mod output;
pub mod spec;
