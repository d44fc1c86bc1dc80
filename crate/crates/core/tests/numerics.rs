//! Invariants of the numerical building blocks: lattice symmetries, the 2D
//! FFT, GMRES and configuration parsing.

use elastic_corners::io::{parse_config, Scalar};
use elastic_corners::scattering::{gmres, D4Element, DirectionOrbits, Fft2, GmresOptions, Geometry, ScattererGrid};
use elastic_corners::C64;
use proptest::prelude::*;

fn complex_vec(n: usize) -> impl Strategy<Value = Vec<C64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b)), n)
}

#[test]
fn d4_is_a_group() {
    let g = D4Element::all();
    assert_eq!(g.len(), 8);
    for a in &g {
        assert_eq!(a.compose(&a.inverse()), D4Element::IDENTITY);
        assert_eq!(a.det().abs(), 1);
        for b in &g {
            assert!(g.contains(&a.compose(b)));
            for c in &g {
                assert_eq!(a.compose(&b.compose(c)), a.compose(b).compose(c));
            }
        }
    }
}

#[test]
fn direction_orbits_partition_the_nodes() {
    for n in [16, 32, 48, 20] {
        let o = DirectionOrbits::new(n, &D4Element::all());
        for (k, (r, g)) in o.map.iter().enumerate() {
            assert!(o.representatives.contains(r));
            assert_eq!(g.map_direction(*r, n), Some(k));
        }
        // with n divisible by 8 the full group acts and orbits have size 4 or 8
        if n % 8 == 0 {
            assert!(o.representatives.len() <= n / 4 + 1);
        }
        assert_eq!(DirectionOrbits::trivial(n).representatives.len(), n);
    }
}

#[test]
fn grid_symmetry_groups_follow_the_shape() {
    let sq = ScattererGrid::new(Geometry::Rectangle { width: 1.0, height: 1.0 }, 12, 2.0).unwrap();
    let rect = ScattererGrid::new(Geometry::Rectangle { width: 1.0, height: 0.5 }, 12, 2.0).unwrap();
    let l = ScattererGrid::new(Geometry::LShape { size: 1.0, notch: 0.5 }, 12, 2.0).unwrap();
    assert_eq!(sq.symmetry_group().len(), 8);
    assert_eq!(rect.symmetry_group().len(), 4);
    assert_eq!(l.symmetry_group().len(), 2);
}

#[test]
fn gmres_reports_non_convergence() {
    // a rotation needs the full Krylov space; one iteration cannot converge
    let b = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    let shift = |x: &[C64], y: &mut [C64]| {
        y[0] = x[2];
        y[1] = x[0];
        y[2] = x[1];
    };
    let out = gmres(shift, &b, None, &GmresOptions { tol: 1e-12, restart: 1, max_iter: 1 });
    assert!(!out.converged);
    let out = gmres(shift, &b, None, &GmresOptions { tol: 1e-12, restart: 3, max_iter: 10 });
    assert!(out.converged && out.residual < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fft_round_trip(nx in 1usize..12, ny in 1usize..12, seed in proptest::collection::vec(-1.0f64..1.0, 288)) {
        let mut data: Vec<C64> = (0..nx * ny).map(|i| C64::new(seed[2 * i], seed[2 * i + 1])).collect();
        let orig = data.clone();
        let mut f = Fft2::new(nx, ny);
        f.forward(&mut data);
        // Parseval
        let e0: f64 = orig.iter().map(|z| z.norm_sqr()).sum();
        let e1: f64 = data.iter().map(|z| z.norm_sqr()).sum::<f64>() / (nx * ny) as f64;
        prop_assert!((e0 - e1).abs() <= 1e-12 * (1.0 + e0));
        f.inverse(&mut data);
        for (a, b) in data.iter().zip(&orig) {
            prop_assert!((a / (nx * ny) as f64 - b).norm() < 1e-13);
        }
    }

    #[test]
    fn gmres_solves_diagonally_dominant_systems(n in 2usize..20, m in complex_vec(400), b in complex_vec(20)) {
        let a = |i: usize, j: usize| if i == j { m[i * 20 + j] + C64::new(2.0 * n as f64, 0.0) } else { m[i * 20 + j] };
        let apply = |x: &[C64], y: &mut [C64]| {
            for (i, yi) in y.iter_mut().enumerate().take(n) {
                *yi = (0..n).map(|j| a(i, j) * x[j]).sum();
            }
        };
        let rhs = &b[..n];
        prop_assume!(rhs.iter().any(|z| z.norm() > 1e-3));
        let out = gmres(apply, rhs, None, &GmresOptions { tol: 1e-11, restart: 30, max_iter: 200 });
        prop_assert!(out.converged);
        let mut y = vec![C64::default(); n];
        apply(&out.x, &mut y);
        let r: f64 = y.iter().zip(rhs).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
        let bn: f64 = rhs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(r <= 1.01e-11 * bn);
        prop_assert!(out.history.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }

    #[test]
    fn d4_maps_lattice_points_isometrically(i in 0usize..8, x in -50i64..50, y in -50i64..50) {
        let g = D4Element::all()[i];
        let p = g.apply_i([x, y]);
        prop_assert_eq!(p[0] * p[0] + p[1] * p[1], x * x + y * y);
        prop_assert_eq!(g.inverse().apply_i(p), [x, y]);
    }

    #[test]
    fn config_parser_never_panics(text in "\\PC{0,200}") {
        let _ = parse_config(&text);
    }

    #[test]
    fn config_parser_survives_key_soup(
        keys in proptest::collection::vec(
            prop_oneof![
                Just("mode = \"solve\""), Just("mode = \"itp-scan\""), Just("mode = \"headline\""),
                Just("lambda = -0.9"), Just("mu = 0"), Just("rho0 = 1"), Just("rho0 = 2.0"),
                Just("omega = 3.0"), Just("omega_range = [5.0, 1.0]"), Just("cells = 1"), Just("cells = 24"),
                Just("directions = 15"), Just("tol = -1"), Just("samples = 2"), Just("jobs = 0"),
                Just("output = \"../x\""), Just("seed = 7"), Just("bogus = 1"),
                Just("[geometry]\nkind = \"disk\"\nradius = 0.5"),
            ],
            0..8,
        )
    ) {
        let mut seen = std::collections::HashSet::new();
        let mut body = String::new();
        let mut tables = String::new();
        for k in keys {
            let name = k.split(' ').next().unwrap();
            if seen.insert(name) {
                if k.starts_with('[') { tables.push_str(k); tables.push('\n'); } else { body.push_str(k); body.push('\n'); }
            }
        }
        body.push_str(&tables);
        if let Err(e) = parse_config(&body) {
            prop_assert!(!e.to_string().is_empty());
        }
    }

    #[test]
    fn scalar_text_round_trips(n in -1000i64..1000, d in 1i64..1000) {
        let s = Scalar::Text(format!("{n}/{d}"));
        let q = s.to_rational().unwrap();
        prop_assert_eq!(q, num_rational::BigRational::new(n.into(), d.into()));
        prop_assert!((s.to_f64().unwrap() - n as f64 / d as f64).abs() < 1e-12);
        prop_assert_eq!(Scalar::Int(n).to_f64().unwrap(), n as f64);
    }
}
