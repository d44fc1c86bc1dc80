//! Exact corner-jet certification and volume-integral scattering for
//! two-dimensional time-harmonic linear elasticity.
//!
//! The crate has two halves. The algebraic half ([`exact`], [`lame`],
//! [`corner`]) works over the Gaussian rationals and certifies, order by
//! order, that a field with vanishing Cauchy data on both legs of a right
//! angle has a vanishing jet at the vertex. The numerical half
//! ([`special`], [`scattering`], [`analysis`]) solves the Lippmann–Schwinger
//! equation for penetrable scatterers and studies the smallest singular value
//! of the far-field operator next to interior transmission eigenvalues.

pub mod analysis;
pub mod corner;
pub mod elastic;
pub mod error;
pub mod exact;
pub mod io;
pub mod lame;
pub mod scattering;
pub mod special;

pub use error::{Error, Result};

/// Complex double used by the numerical modules.
pub type C64 = num_complex::Complex64;
