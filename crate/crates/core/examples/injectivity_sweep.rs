//! σ_min/σ_median of the far-field operator across a frequency window for a
//! square and an L-shaped scatterer. CSV on stdout.

use elastic_corners::analysis::{injectivity_sweep, AssemblyOptions};
use elastic_corners::elastic::LameParameters;
use elastic_corners::scattering::{Geometry, ScattererGrid};

fn main() -> elastic_corners::Result<()> {
    let p = LameParameters::new(-0.9, 1.0)?;
    let opts = AssemblyOptions::default();
    println!("scatterer,omega,ratio");
    for geometry in [Geometry::Rectangle { width: 1.0, height: 1.0 }, Geometry::LShape { size: 1.0, notch: 0.5 }] {
        let grid = ScattererGrid::new(geometry, 24, 2.0)?;
        let rep = injectivity_sweep(&grid, &p, (6.0, 10.0), 16, 20, &opts)?;
        for s in &rep.samples {
            println!("{},{:.4},{:.4e}", rep.scatterer, s.omega, s.ratio);
        }
        eprintln!("{}: smallest ratio {:.3e}", rep.scatterer, rep.min_ratio());
    }
    Ok(())
}
