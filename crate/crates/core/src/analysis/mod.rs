//! Far-field operator assembly, Herglotz synthesis, injectivity sweeps and
//! interior transmission spectra.
//!
//! Injectivity is measured by `σ_min(F) / σ_median(F)` over frequency
//! windows. Transmission eigenvalue candidates come from singular-value dips
//! of a finite-difference model on rectangles and from exact mode matching on
//! disks.

mod band;
mod disk_ite;
mod farfield_matrix;
mod headline;
mod itp;
mod parallel;
mod sweep;

pub use band::{BandLu, BandMatrix};
pub use disk_ite::{disk_itp_determinant, disk_ites, DiskIte};
pub use farfield_matrix::{
    assemble_f, herglotz_eval, herglotz_weight, median, sorted_singular_values, AssemblyOptions, FarFieldMatrix,
    HerglotzDensity,
};
pub use headline::*;
pub use itp::{itp_scan, refine_itp_dip, ItpDip, ItpOperator, ItpReport, ItpScanOptions};
pub use parallel::par_map;
pub use sweep::{
    golden_min, injectivity_sweep, linspace, local_minima, sample_injectivity, sample_injectivity_band, sweep_frequencies, SweepReport,
    SweepSample,
};
