//! Exact arithmetic over the Gaussian rationals ℚ(i).

mod gaussian;
mod matrix;

pub use gaussian::{GaussianInt, GaussianRational};
pub use matrix::{GRMatrix, RankReport};
