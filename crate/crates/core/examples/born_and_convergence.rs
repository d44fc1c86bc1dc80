//! Zero-contrast limit, Born error ratio and h-refinement order on a disk.

use elastic_corners::elastic::{Direction, LameParameters, PlaneWave, WaveKind};
use elastic_corners::scattering::{far_field, FarFieldPattern, Geometry, LsOperator, ScattererGrid, SolveOptions, WaveField};

fn pattern(cells: usize, rho0: f64, p: &LameParameters, omega: f64) -> elastic_corners::Result<(FarFieldPattern, WaveField, WaveField, LsOperator)> {
    let grid = ScattererGrid::new(Geometry::Disk { radius: 0.5 }, cells, rho0)?;
    let wave = PlaneWave::new(WaveKind::P, Direction::from_angle(0.3), p.wavenumbers(omega)?);
    let mut op = LsOperator::new(&grid, p, omega)?;
    let uin = WaveField::from_plane_wave(&grid, &wave);
    let u = op.solve(&uin, &SolveOptions::with_tol(1e-12))?.field;
    Ok((far_field(&u, &grid, p, omega, 32)?, u, uin, op))
}

fn diff(a: &FarFieldPattern, b: &FarFieldPattern) -> f64 {
    let d: f64 = a.up.iter().zip(&b.up).chain(a.us.iter().zip(&b.us)).map(|(x, y)| (x - y).norm_sqr()).sum();
    d.sqrt() / b.norm()
}

fn main() -> elastic_corners::Result<()> {
    let p = LameParameters::new(1.0, 1.0)?;
    let omega = 3.0;

    let (_, u, uin, _) = pattern(24, 1.0 + 1e-12, &p, omega)?;
    println!("ρ₀ = 1 + 1e-12: ‖u − u_in‖/‖u_in‖ = {:.1e}", u.rel_diff(&uin));

    let mut errs = Vec::new();
    for eps in [0.1, 0.05] {
        let (_, u, uin, mut op) = pattern(24, 1.0 + eps, &p, omega)?;
        let born = op.born(&uin);
        errs.push(u.rel_diff(&born));
        println!("ε = {eps}: ‖u − u_Born‖/‖u_Born‖ = {:.3e}", errs.last().unwrap());
    }
    println!("Born error ratio {:.3}", errs[0] / errs[1]);

    let ps: Vec<_> = [24, 48, 96].iter().map(|&n| pattern(n, 2.0, &p, omega).map(|x| x.0)).collect::<Result<_, _>>()?;
    let (d1, d2) = (diff(&ps[0], &ps[1]), diff(&ps[1], &ps[2]));
    println!("far-field changes {d1:.3e}, {d2:.3e}; observed order {:.2}", (d1 / d2).log2());
    Ok(())
}
