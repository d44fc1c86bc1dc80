//! Transmission dips of the unit square next to the exact transmission
//! eigenvalues of the inscribed disk.

use elastic_corners::analysis::{disk_ites, itp_scan, ItpScanOptions};
use elastic_corners::elastic::LameParameters;

fn main() -> elastic_corners::Result<()> {
    let p = LameParameters::new(-0.9, 1.0)?;
    let (rho0, window) = (1.5, (27.5, 30.5));
    let rep = itp_scan(1.0, 1.0, rho0, &p, window, 48, &ItpScanOptions::default())?;
    println!("square, {}×{} cells, median σ_min {:.3e}", rep.cells[0], rep.cells[1], rep.median);
    for d in &rep.dips {
        println!("  dip at ω = {:.5}: depth {:.3e}", d.omega, d.depth);
    }
    println!("disk of radius 1/2:");
    for e in disk_ites(&p, rho0, 0.5, window, 2000)? {
        println!("  eigenvalue ω = {:.5} (mode {})", e.omega, e.mode);
    }
    Ok(())
}
