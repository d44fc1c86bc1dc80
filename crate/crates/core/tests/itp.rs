//! Interior transmission problem: discrete scans on a square and the exact
//! eigenvalues of a disk.

use elastic_corners::analysis::{disk_itp_determinant, disk_ites, itp_scan, refine_itp_dip, ItpOperator, ItpScanOptions};
use elastic_corners::elastic::LameParameters;
use elastic_corners::Error;

fn params() -> LameParameters {
    LameParameters::new(-0.9, 1.0).unwrap()
}

#[test]
fn square_scan_finds_a_deep_dip_that_survives_refinement() {
    let p = params();
    let opts = ItpScanOptions { samples: 40, ..ItpScanOptions::default() };
    let rep = itp_scan(1.0, 1.0, 4.0, &p, (2.0, 9.4), 24, &opts).unwrap();
    assert_eq!(rep.omegas.len(), 40);
    assert!(rep.sigma_min.iter().all(|s| s.is_finite() && *s >= 0.0));
    let d = rep.deepest().expect("a dip");
    assert!(d.depth <= 1e-2, "{d:?}");
    assert!(rep.dips.windows(2).all(|w| w[0].depth <= w[1].depth));
    let fine = ItpOperator::new(1.0, 1.0, 4.0, p, 48).unwrap();
    let r = refine_itp_dip(&fine, d.omega, 0.03, 9, 1e-5).unwrap();
    assert!((r.omega / d.omega - 1.0).abs() < 0.05, "{} vs {}", r.omega, d.omega);
}

#[test]
fn low_window_has_no_dip() {
    let opts = ItpScanOptions { samples: 12, ..ItpScanOptions::default() };
    let rep = itp_scan(1.0, 1.0, 4.0, &params(), (0.5, 1.5), 16, &opts).unwrap();
    assert!(rep.dips.iter().all(|d| d.depth > 0.5), "{:?}", rep.dips);
}

#[test]
fn scans_are_reproducible_and_parallel_safe() {
    let p = params();
    let a = itp_scan(1.0, 0.75, 3.0, &p, (3.0, 5.0), 12, &ItpScanOptions { samples: 8, refine_tol: 1e-3, jobs: 1 }).unwrap();
    let b = itp_scan(1.0, 0.75, 3.0, &p, (3.0, 5.0), 12, &ItpScanOptions { samples: 8, refine_tol: 1e-3, jobs: 3 }).unwrap();
    assert_eq!(a.sigma_min, b.sigma_min);
    assert_eq!(a.dips, b.dips);
}

#[test]
fn malformed_scans_refused() {
    let p = params();
    let o = ItpScanOptions::default();
    assert!(itp_scan(1.0, 1.0, 4.0, &p, (3.0, 2.0), 16, &o).is_err());
    assert!(itp_scan(1.0, 1.0, 4.0, &p, (1.0, 2.0), 16, &ItpScanOptions { samples: 2, ..o }).is_err());
    assert!(matches!(itp_scan(1.0, 1.0, 4.0, &p, (10.0, 40.0), 16, &o), Err(Error::Resolution(_))));
    assert!(ItpOperator::new(1.0, 1.0, 1.0, p, 16).is_err());
}

#[test]
fn disk_eigenvalues_by_mode() {
    let want = [
        (0, 5.805),
        (2, 5.958),
        (0, 6.089),
        (1, 6.792),
        (3, 7.000),
        (1, 7.132),
        (2, 8.149),
        (4, 8.156),
        (3, 9.283),
        (5, 9.324),
    ];
    let ites = disk_ites(&params(), 4.0, 0.5, (5.5, 9.41), 400).unwrap();
    for (mode, omega) in want {
        assert!(
            ites.iter().any(|e| e.mode == mode && (e.omega - omega).abs() < 2e-3),
            "mode {mode} near {omega}: {ites:?}"
        );
    }
    for e in &ites {
        let f = |o| disk_itp_determinant(&params(), 4.0, 0.5, e.mode, o);
        assert!(f(e.omega - 1e-6) * f(e.omega + 1e-6) <= 0.0);
    }
}

#[test]
fn weak_contrast_disk_has_no_low_eigenvalue() {
    let ites = disk_ites(&params(), 1.5, 0.5, (1.0, 15.0), 600).unwrap();
    assert!(ites.is_empty(), "{ites:?}");
}
