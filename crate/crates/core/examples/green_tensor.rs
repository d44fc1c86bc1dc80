//! The Kupradze tensor: symmetry, Navier residual and far-field constants.

use elastic_corners::elastic::{navier_residual_fd, LameParameters};
use elastic_corners::scattering::{calibrate_farfield_constants, farfield_constants, kupradze_green};

fn main() -> elastic_corners::Result<()> {
    let p = LameParameters::new(0.5, 1.0)?;
    let omega = 4.0;
    let k = p.wavenumbers(omega)?;
    let (x, y) = ([0.7, -0.3], [-0.4, 0.9]);
    let g = kupradze_green(x, y, &p, omega)?;
    let gt = kupradze_green(y, x, &p, omega)?;
    println!("Γ(x, y) = {g:?}");
    println!("|Γ(x, y) − Γ(y, x)ᵀ| = {:.1e}", (g[0][1] - gt[1][0]).norm());

    for col in 0..2 {
        let h = 2.0 * std::f64::consts::PI / k.k_s / 40.0;
        let r = navier_residual_fd(|z| { let m = kupradze_green(z, y, &p, omega).unwrap(); [m[0][col], m[1][col]] }, x, &p, omega, h);
        println!("Navier residual of column {col}: {:.2e}", r[0].norm().max(r[1].norm()));
    }

    let (cp, cs) = farfield_constants(&p, &k);
    for wl in [200.0, 400.0] {
        let (ep, es) = calibrate_farfield_constants(&p, omega, [0.6, 0.8], [0.01, -0.02], wl)?;
        println!("r = {wl} wavelengths: |ĉ_p/c_p − 1| = {:.1e}, |ĉ_s/c_s − 1| = {:.1e}", (ep / cp - 1.0).norm(), (es / cs - 1.0).norm());
    }
    Ok(())
}
