//! Volume-integral forward solver for penetrable elastic scatterers.
//!
//! The total field satisfies `u = u_in + ω²(ρ₀−1) ∫_D Γ(·,y) u(y) dy` with Γ
//! the outgoing Kupradze tensor, `(ℒ + ω²)Γ = −δI`. Cells are squares with
//! area-fraction weights; the convolution runs through zero-padded FFTs and
//! the linear system through restarted GMRES.

mod farfield;
mod fft2;
mod gmres;
mod green;
mod grid;
mod solver;
mod symmetry;

pub use farfield::{direction_angles, far_field, far_field_direct_check, FarFieldEvaluator, scattered_field_at, FarFieldPattern};
pub use fft2::Fft2;
pub use gmres::{gmres, GmresOptions, GmresOutcome};
pub use green::{
    calibrate_farfield_constants, farfield_constants, kupradze_green, self_cell_integral, GreenKernel,
};
pub use grid::{Geometry, ScattererGrid};
pub use solver::{ls_solve, LsOperator, SolveOptions, Solution, WaveField};
pub use symmetry::{D4Element, DirectionOrbits};
