//! Jet-vanishing induction at a right-angled corner.
//!
//! The corner sits at the origin with its legs along the positive axes. At
//! derivative order `n` the unknowns are `v[t][j] = Λ₁ʲ Λ₂ⁿ⁻ʲ W_t(O)` for
//! `t ∈ {1, 2}` and `j ∈ 0..=n`, where `W₁ = w₁ − i w₂` and `W₂ = w₁ + i w₂`.
//! Boundary data on the legs give four rows per `t`; the squared Navier
//! operator supplies the remaining `2(n−3)` rows once `n ≥ 4`.

mod certify;
mod printed;
mod rows;

pub use certify::{
    certify, certify_order, chain_u0_and_l2, global_guards, probe_order, ChainStep, InductionCertificate, OrderReport,
};
pub use printed::{compare_printed_systems, derived_normal_form, printed_normal_form, DiffEntry, PrintedDiff};
pub use rows::{
    basis_change, boundary_rows, col, jet_system, pde_rows, Combination, JetSystem, Leg, Provenance,
    TraceKind,
};
