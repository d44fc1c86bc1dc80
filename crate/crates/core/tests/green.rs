//! The Kupradze tensor: Navier residual, symmetry and far-field constants.

use elastic_corners::elastic::{navier_residual_fd, LameParameters};
use elastic_corners::scattering::{calibrate_farfield_constants, farfield_constants, kupradze_green, GreenKernel};
use elastic_corners::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn random_setup(rng: &mut ChaCha8Rng) -> (LameParameters, f64) {
    let mu: f64 = rng.random_range(0.3..3.0);
    let lam = rng.random_range(-0.8 * mu..3.0);
    (LameParameters::new(lam, mu).unwrap(), rng.random_range(0.5..6.0))
}

#[test]
fn columns_satisfy_navier_away_from_the_source() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..50 {
        let (p, omega) = random_setup(&mut rng);
        let k = p.wavenumbers(omega).unwrap();
        let wavelength = 2.0 * PI / k.k_s;
        let h = wavelength / 60.0;
        let y = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let r = rng.random_range(0.5..2.0) * wavelength;
        let t: f64 = rng.random_range(0.0..2.0 * PI);
        let x = [y[0] + r * t.cos(), y[1] + r * t.sin()];
        for c in 0..2 {
            let col = |z: [f64; 2]| {
                let g = kupradze_green(z, y, &p, omega).unwrap();
                [g[0][c], g[1][c]]
            };
            let g = col(x);
            let scale = g[0].norm().max(g[1].norm()) * k.k_s * k.k_s * p.p_modulus();
            let res = navier_residual_fd(col, x, &p, omega, h);
            let rel = res[0].norm().max(res[1].norm()) / scale;
            assert!(rel < 1e-5, "pair {i}, column {c}: {rel:.2e}");
        }
    }
}

#[test]
fn tensor_is_symmetric_and_reciprocal() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let (p, omega) = random_setup(&mut rng);
        let x = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
        let y = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
        let a = kupradze_green(x, y, &p, omega).unwrap();
        let b = kupradze_green(y, x, &p, omega).unwrap();
        let s = a[0][0].norm() + a[1][1].norm();
        assert!((a[0][1] - a[1][0]).norm() <= 1e-12 * s);
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[j][i]).norm() <= 1e-12 * s);
            }
        }
    }
}

#[test]
fn coincident_points_are_a_domain_error() {
    let p = LameParameters::new(1.0, 1.0).unwrap();
    assert!(kupradze_green([0.1, 0.2], [0.1, 0.2], &p, 2.0).is_err());
    assert!(GreenKernel::new(p, 0.0).is_err());
}

#[test]
fn far_field_constants_match_calibration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..5 {
        let (p, omega) = random_setup(&mut rng);
        let k = p.wavenumbers(omega).unwrap();
        let (cp, cs) = farfield_constants(&p, &k);
        let t: f64 = rng.random_range(0.0..2.0 * PI);
        let y = [rng.random_range(-0.05..0.05), rng.random_range(-0.05..0.05)];
        let rel = |a: C64, b: C64| (a - b).norm() / b.norm();
        let (p200, s200) = calibrate_farfield_constants(&p, omega, [t.cos(), t.sin()], y, 200.0).unwrap();
        let (p400, s400) = calibrate_farfield_constants(&p, omega, [t.cos(), t.sin()], y, 400.0).unwrap();
        assert!(rel(p200, p400) < 1e-3 && rel(s200, s400) < 1e-3);
        assert!(rel(p400, cp) < 1e-3 && rel(s400, cs) < 1e-3, "{p400} vs {cp}, {s400} vs {cs}");
    }
}
