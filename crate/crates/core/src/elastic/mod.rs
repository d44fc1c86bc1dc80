//! Physical layer: Lamé parameters, plane waves, boundary operators and the
//! compressional/shear split.

mod boundary;
mod fd;
mod params;
mod split;

pub use boundary::{
    guenter_derivative, normal_from_cauchy, traction, traction_curl_form, traction_mu_form,
    VanishingField,
};
pub use fd::{central_weights, navier_residual_fd};
pub use params::{
    BoundarySegment, Direction, FieldSample, Jacobian, LameParameters, PlaneWave, WaveKind,
    Wavenumbers,
};
pub use split::{helmholtz_split, GridField, SplitReport};
