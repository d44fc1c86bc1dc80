//! One Lippmann–Schwinger solve on a disk, its far-field pattern written as
//! CSV to stdout, and the direct check against the volume potential.

use elastic_corners::elastic::{Direction, LameParameters, PlaneWave, WaveKind};
use elastic_corners::scattering::{far_field, far_field_direct_check, ls_solve, Geometry, ScattererGrid};

fn main() -> elastic_corners::Result<()> {
    let p = LameParameters::new(1.0, 1.0)?;
    let omega = 3.0;
    let grid = ScattererGrid::new(Geometry::Disk { radius: 0.5 }, 48, 2.0)?;
    let wave = PlaneWave::new(WaveKind::P, Direction::from_angle(0.0), p.wavenumbers(omega)?);
    let sol = ls_solve(&grid, &wave, &p, omega, 1e-10)?;
    eprintln!("{} GMRES iterations, relative residual {:.2e}", sol.iterations, sol.residual);
    let pattern = far_field(&sol.field, &grid, &p, omega, 36)?;
    let r = 500.0 * 2.0 * std::f64::consts::PI / p.wavenumbers(omega)?.k_p;
    let check = far_field_direct_check(&sol.field, &grid, &p, omega, &pattern, 0, r)?;
    eprintln!("direct potential vs far-field asymptotics at 500 wavelengths: {check:.2e}");
    pattern.write_csv(std::io::stdout())
}
