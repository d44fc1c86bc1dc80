use serde::Serialize;

use super::sweep::linspace;
use crate::elastic::LameParameters;
use crate::special::bessel_jn_with_derivative;
use crate::{Error, Result};

/// Transmission eigenvalue of a disk with its angular mode.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DiskIte {
    pub mode: usize,
    pub omega: f64,
}

/// Rows `[u_r, u_θ, t_r, t_θ]` of the mode-`n` compressional and shear
/// solutions with wavenumber `k` at radius `r`, scaled to be real.
fn mode_columns(p: &LameParameters, n: usize, k: f64, r: f64) -> ([f64; 4], [f64; 4]) {
    let z = k * r;
    let (j, jp) = bessel_jn_with_derivative(n, z);
    let nf = n as f64;
    let jpp = -jp / z - (1.0 - nf * nf / (z * z)) * j;
    let (lam, mu) = (p.lambda(), p.mu());
    let cross = 2.0 * mu * nf * (k * jp / r - j / (r * r));
    let pcol = [k * jp, nf / r * j, 2.0 * mu * k * k * jpp - lam * k * k * j, cross];
    let scol = [-nf / r * j, -k * jp, -cross, -2.0 * mu * k * k * jpp - mu * k * k * j];
    (pcol, scol)
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    let mut a = m;
    let mut det = 1.0;
    for c in 0..4 {
        let p = (c..4).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).expect("rows");
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..4 {
            let f = a[r][c] / a[c][c];
            for k in c..4 {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}

/// Matching determinant for angular mode `n`: displacement and traction of the
/// field inside (density ρ₀) equal those of a free-space field on `|x| = R`.
pub fn disk_itp_determinant(p: &LameParameters, rho0: f64, radius: f64, n: usize, omega: f64) -> f64 {
    let kp = omega / p.p_modulus().sqrt();
    let ks = omega / p.mu().sqrt();
    let s = rho0.sqrt();
    let (a, _) = mode_columns(p, n, kp * s, radius);
    let (_, b) = mode_columns(p, n, ks * s, radius);
    let (c, _) = mode_columns(p, n, kp, radius);
    let (_, d) = mode_columns(p, n, ks, radius);
    let mut m = [[0.0; 4]; 4];
    for r in 0..4 {
        m[r] = [a[r], b[r], c[r], d[r]];
    }
    det4(m)
}

/// Transmission eigenvalues of a disk in a frequency window, from sign changes of
/// the matching determinant on `samples` points per mode, refined by bisection.
pub fn disk_ites(
    p: &LameParameters,
    rho0: f64,
    radius: f64,
    omega_range: (f64, f64),
    samples: usize,
) -> Result<Vec<DiskIte>> {
    let (lo, hi) = omega_range;
    if !(lo > 0.0 && hi > lo) || !(radius > 0.0) || rho0 == 1.0 || !(rho0 > 0.0) {
        return Err(Error::config("need 0 < lo < hi, radius > 0 and positive rho0 different from one"));
    }
    let k_max = hi * (rho0.max(1.0) / p.mu()).sqrt();
    let n_max = (k_max * radius).ceil() as usize + 8;
    let grid = linspace(lo, hi, samples.max(2));
    let mut out = Vec::new();
    for n in 0..=n_max {
        let f = |o: f64| disk_itp_determinant(p, rho0, radius, n, o);
        let vals: Vec<f64> = grid.iter().map(|&o| f(o)).collect();
        for i in 0..grid.len() - 1 {
            if vals[i] == 0.0 {
                out.push(DiskIte { mode: n, omega: grid[i] });
            } else if vals[i] * vals[i + 1] < 0.0 {
                let (mut a, mut b, mut fa) = (grid[i], grid[i + 1], vals[i]);
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if m <= a || m >= b {
                        break;
                    }
                    let fm = f(m);
                    if (fm < 0.0) == (fa < 0.0) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                out.push(DiskIte { mode: n, omega: 0.5 * (a + b) });
            }
        }
    }
    out.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(out)
}
