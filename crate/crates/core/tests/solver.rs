//! Volume-integral solver: limits, refinement, reciprocity and the far field.

use elastic_corners::analysis::{assemble_f, AssemblyOptions};
use elastic_corners::elastic::{helmholtz_split, Direction, GridField, LameParameters, PlaneWave, SplitReport, WaveKind};
use elastic_corners::scattering::{
    far_field, far_field_direct_check, ls_solve, FarFieldPattern, Geometry, LsOperator, ScattererGrid, SolveOptions,
    WaveField,
};
use elastic_corners::{Error, C64};
use std::f64::consts::PI;

const OMEGA: f64 = 3.0;

fn unit() -> LameParameters {
    LameParameters::new(1.0, 1.0).unwrap()
}

fn disk(cells: usize, rho0: f64) -> ScattererGrid {
    ScattererGrid::new(Geometry::Disk { radius: 0.5 }, cells, rho0).unwrap()
}

fn incident(p: &LameParameters, kind: WaveKind) -> PlaneWave {
    PlaneWave::new(kind, Direction::from_angle(0.3), p.wavenumbers(OMEGA).unwrap())
}

fn pattern_diff(a: &FarFieldPattern, b: &FarFieldPattern) -> f64 {
    let d: f64 = a.up.iter().zip(&b.up).chain(a.us.iter().zip(&b.us)).map(|(x, y)| (x - y).norm_sqr()).sum();
    d.sqrt() / b.norm()
}

#[test]
fn zero_contrast_returns_the_incident_field() {
    let p = unit();
    let grid = disk(24, 1.0 + 1e-12);
    let wave = incident(&p, WaveKind::P);
    let sol = ls_solve(&grid, &wave, &p, OMEGA, 1e-12).unwrap();
    let uin = WaveField::from_plane_wave(&grid, &wave);
    assert!(sol.field.rel_diff(&uin) < 1e-9);
}

#[test]
fn born_error_is_quadratic_in_contrast() {
    let p = unit();
    let wave = incident(&p, WaveKind::P);
    let err = |eps: f64| {
        let grid = disk(24, 1.0 + eps);
        let mut op = LsOperator::new(&grid, &p, OMEGA).unwrap();
        let uin = WaveField::from_plane_wave(&grid, &wave);
        let u = op.solve(&uin, &SolveOptions::with_tol(1e-12)).unwrap().field;
        u.rel_diff(&op.born(&uin))
    };
    let ratio = err(0.1) / err(0.05);
    assert!((3.5..=4.5).contains(&ratio), "Born ratio {ratio}");
}

#[test]
fn far_field_converges_at_second_order() {
    let p = unit();
    let wave = incident(&p, WaveKind::P);
    let pat = |cells: usize| {
        let grid = disk(cells, 2.0);
        let sol = ls_solve(&grid, &wave, &p, OMEGA, 1e-12).unwrap();
        far_field(&sol.field, &grid, &p, OMEGA, 32).unwrap()
    };
    let (a, b, c) = (pat(24), pat(48), pat(96));
    let order = (pattern_diff(&a, &b) / pattern_diff(&b, &c)).log2();
    assert!(order >= 1.8, "observed order {order}");
}

#[test]
fn far_field_matches_the_volume_potential() {
    let p = unit();
    let grid = disk(48, 2.0);
    let wave = PlaneWave::new(WaveKind::P, Direction::from_angle(0.0), p.wavenumbers(OMEGA).unwrap());
    let sol = ls_solve(&grid, &wave, &p, OMEGA, 1e-10).unwrap();
    let pattern = far_field(&sol.field, &grid, &p, OMEGA, 36).unwrap();
    let r = 500.0 * 2.0 * PI / p.wavenumbers(OMEGA).unwrap().k_p;
    for i in [0, 5, 18] {
        let e = far_field_direct_check(&sol.field, &grid, &p, OMEGA, &pattern, i, r).unwrap();
        assert!(e < 1e-2, "direction {i}: {e:.2e}");
    }
}

#[test]
fn far_field_is_reciprocal() {
    // F_pp(x̂, d) = F_pp(−d, −x̂), F_ss likewise, and c_p F_sp(−d, −x̂) = c_s F_ps(x̂, d)
    let p = LameParameters::new(0.5, 1.0).unwrap();
    let grid = ScattererGrid::new(Geometry::LShape { size: 1.0, notch: 0.4 }, 16, 1.8).unwrap();
    let n = 16;
    let opts = AssemblyOptions { solve: SolveOptions::with_tol(1e-12), use_symmetry: false, jobs: 1 };
    let f = assemble_f(&grid, &p, 2.0, n, &opts).unwrap();
    let k = p.wavenumbers(2.0).unwrap();
    let (cp, cs) = elastic_corners::scattering::farfield_constants(&p, &k);
    let scale = f.raw.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let opp = |i: usize| (i + n / 2) % n;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let pp = f.raw[(i, j)] - f.raw[(opp(j), opp(i))];
            let ss = f.raw[(n + i, n + j)] - f.raw[(n + opp(j), n + opp(i))];
            let ps = f.raw[(opp(j) + n, opp(i))] * cp - f.raw[(i, n + j)] * cs;
            worst = worst.max(pp.norm()).max(ss.norm()).max(ps.norm() / cp.norm());
        }
    }
    assert!(worst <= 1e-9 * scale, "reciprocity defect {:.2e} of {scale:.2e}", worst);
}

#[test]
fn zero_field_has_zero_pattern_and_linearity_holds() {
    let p = unit();
    let grid = disk(24, 2.0);
    let z = far_field(&WaveField::zeros(&grid), &grid, &p, OMEGA, 32).unwrap();
    assert_eq!(z.norm(), 0.0);
    let up = WaveField::from_plane_wave(&grid, &incident(&p, WaveKind::P));
    let us = WaveField::from_plane_wave(&grid, &incident(&p, WaveKind::S));
    let a = C64::new(0.3, -1.2);
    let mix = WaveField {
        nx: up.nx,
        ny: up.ny,
        values: up.values.iter().zip(&us.values).map(|(x, y)| [x[0] * a + y[0], x[1] * a + y[1]]).collect(),
    };
    let (fp, fs, fm) = (
        far_field(&up, &grid, &p, OMEGA, 32).unwrap(),
        far_field(&us, &grid, &p, OMEGA, 32).unwrap(),
        far_field(&mix, &grid, &p, OMEGA, 32).unwrap(),
    );
    for i in 0..32 {
        assert!((fm.up[i] - (fp.up[i] * a + fs.up[i])).norm() < 1e-12 * fm.norm());
        assert!((fm.us[i] - (fp.us[i] * a + fs.us[i])).norm() < 1e-12 * fm.norm());
    }
}

#[test]
fn scattered_pattern_vanishes_linearly_with_contrast() {
    let p = unit();
    let wave = incident(&p, WaveKind::S);
    let norm = |eps: f64| {
        let grid = disk(24, 1.0 + eps);
        let sol = ls_solve(&grid, &wave, &p, OMEGA, 1e-12).unwrap();
        far_field(&sol.field, &grid, &p, OMEGA, 32).unwrap().norm()
    };
    let (a, b) = (norm(1e-3), norm(5e-4));
    assert!((a / b - 2.0).abs() < 1e-2, "{}", a / b);
}

#[test]
fn coarse_grids_and_bad_tolerances_are_refused() {
    let p = unit();
    let grid = disk(8, 2.0);
    assert!(matches!(LsOperator::new(&grid, &p, 20.0), Err(Error::Resolution(_))));
    let wave = incident(&p, WaveKind::P);
    assert!(ls_solve(&disk(24, 2.0), &wave, &p, OMEGA, 0.0).is_err());
    assert!(ScattererGrid::new(Geometry::Disk { radius: 0.5 }, 24, 1.0).is_err());
}

#[test]
fn residual_is_reported_honestly() {
    let p = unit();
    let grid = disk(32, 3.0);
    let wave = incident(&p, WaveKind::P);
    let mut op = LsOperator::new(&grid, &p, OMEGA).unwrap();
    let uin = WaveField::from_plane_wave(&grid, &wave);
    let sol = op.solve(&uin, &SolveOptions::with_tol(1e-9)).unwrap();
    let r = op.residual(&sol.field, &uin);
    assert!(r <= 1e-9 * 1.01, "{r}");
    assert!((r - sol.residual).abs() < 1e-10);
}

#[test]
fn compressional_shear_split_recovers_the_parts() {
    let p = LameParameters::new(0.7, 1.2).unwrap();
    let k = p.wavenumbers(2.5).unwrap();
    let wp = PlaneWave::new(WaveKind::P, Direction::from_angle(0.4), k);
    let ws = PlaneWave::new(WaveKind::S, Direction::from_angle(2.0), k);
    let u = GridField::annulus([0.0, 0.0], 1.0, 2.0, 0.05, |x| {
        let (a, b) = (wp.value(x), ws.value(x));
        [a[0] + b[0], a[1] + b[1]]
    });
    let (up, us) = helmholtz_split(&u, &k).unwrap();
    let rep = SplitReport::compute(&u, &up, &us, &k);
    assert!(rep.points > 100);
    assert!(rep.sum_error < 1e-10, "{rep:?}");
    assert!(rep.residual_p < 1e-6 && rep.residual_s < 1e-6, "{rep:?}");
    for i in 0..u.values.len() {
        if up.mask[i] {
            let x = u.point(i % u.nx, i / u.nx);
            let a = wp.value(x);
            assert!((up.values[i][0] - a[0]).norm().max((up.values[i][1] - a[1]).norm()) < 1e-6);
        }
    }
}
