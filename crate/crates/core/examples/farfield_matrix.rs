//! The discretised far-field operator of a disk, its singular values and a
//! Herglotz wave built from its smallest right singular vector.

use elastic_corners::analysis::{assemble_f, herglotz_eval, median, AssemblyOptions, HerglotzDensity};
use elastic_corners::elastic::LameParameters;
use elastic_corners::scattering::{Geometry, ScattererGrid};

fn main() -> elastic_corners::Result<()> {
    let p = LameParameters::new(1.0, 1.0)?;
    let omega = 16.0;
    let n = 32;
    let grid = ScattererGrid::new(Geometry::Disk { radius: 0.5 }, 32, 2.0)?;
    let f = assemble_f(&grid, &p, omega, n, &AssemblyOptions::default())?;
    println!("{} forward solves ({} GMRES iterations) for {} columns", f.solves, f.iterations, 2 * n);
    let m = f.matrix();
    let svd = m.clone().svd(true, true);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(f64::total_cmp);
    println!("σ_max = {:.3e}, σ_median = {:.3e}, σ_min = {:.3e}", s[s.len() - 1], median(&s), s[0]);

    let vt = svd.v_t.expect("right singular vectors");
    let imin = (0..svd.singular_values.len()).min_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b])).unwrap();
    let v: Vec<_> = vt.row(imin).iter().map(|z| z.conj()).collect();
    let g = HerglotzDensity::new(v[..n].to_vec(), v[n..].to_vec())?;
    let ug = herglotz_eval(&g, &p, omega, [0.1, 0.2])?;
    println!("Herglotz wave of the least-scattered density at (0.1, 0.2): {ug:?}");
    Ok(())
}
