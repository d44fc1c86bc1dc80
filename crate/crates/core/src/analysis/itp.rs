use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use super::band::BandMatrix;
use super::farfield_matrix::median;
use super::parallel::par_map;
use super::sweep::{golden_min, linspace, local_minima};
use crate::elastic::LameParameters;
use crate::{Error, Result};

/// Finite-difference model of the interior transmission problem on a rectangle.
///
/// Eliminating `v = (ℒw + ω²ρ₀w) / (ω²(1−ρ₀))` leaves the clamped fourth-order
/// problem `(ℒ + ω²)(ℒ + ω²ρ₀) w = 0`, `w = ∂_ν w = 0`. Since `w = 0` on the
/// boundary, `Tw = 0` there is equivalent to `∂_ν w = 0`. Unknowns are `w` at
/// interior nodes; `w = 0` is imposed on boundary nodes and `∂_ν w = 0` by even
/// reflection across the boundary when the outer `ℒ` is applied.
pub struct ItpOperator {
    pub width: f64,
    pub height: f64,
    pub h: f64,
    /// Cells along x and y.
    pub nx: usize,
    pub ny: usize,
    pub rho0: f64,
    pub params: LameParameters,
    ll: BandMatrix,
    l: BandMatrix,
    eye: BandMatrix,
}

/// One term `c · w_b(node + (di, dj))` of component `a` of `h² ℒw`.
type StencilTerm = (usize, usize, i64, i64, f64);

fn navier_stencil(p: &LameParameters) -> Vec<StencilTerm> {
    let (c11, c22, c12) = (p.p_modulus(), p.mu(), p.lambda() + p.mu());
    let mut st = Vec::new();
    for (a, cx, cy) in [(0usize, c11, c22), (1, c22, c11)] {
        st.extend([
            (a, a, -1, 0, cx),
            (a, a, 1, 0, cx),
            (a, a, 0, -1, cy),
            (a, a, 0, 1, cy),
            (a, a, 0, 0, -2.0 * (cx + cy)),
        ]);
    }
    for (a, b) in [(0usize, 1usize), (1, 0)] {
        st.extend([(a, b, 1, 1, c12 / 4.0), (a, b, -1, -1, c12 / 4.0), (a, b, 1, -1, -c12 / 4.0), (a, b, -1, 1, -c12 / 4.0)]);
    }
    st
}

impl ItpOperator {
    /// `cells` cells across the longer side.
    pub fn new(width: f64, height: f64, rho0: f64, params: LameParameters, cells: usize) -> Result<Self> {
        let mut errs = Vec::new();
        if !(width > 0.0 && height > 0.0) {
            errs.push(format!("side lengths must be positive (got {width} × {height})"));
        }
        if !(rho0 > 0.0) || rho0 == 1.0 || !rho0.is_finite() {
            errs.push(format!("rho0 must be positive and different from one (got {rho0})"));
        }
        if cells < 4 {
            errs.push(format!("need at least 4 cells across (got {cells})"));
        }
        if !errs.is_empty() {
            return Err(Error::Config(errs));
        }
        let h = width.max(height) / cells as f64;
        let count = |s: f64| -> Result<usize> {
            let m = (s / h).round();
            if (m * h - s).abs() > 1e-9 * s || m < 4.0 {
                return Err(Error::config(format!("side {s} is not a multiple of the spacing {h} (at least 4 cells)")));
            }
            Ok(m as usize)
        };
        let (nx, ny) = (count(width)?, count(height)?);
        let (mx, my) = (nx - 1, ny - 1);
        // Fast index runs along the shorter direction to keep the band narrow.
        let fast_x = mx <= my;
        let fast = if fast_x { mx } else { my };
        let index = move |i: usize, j: usize, c: usize| -> usize {
            let (slow, f) = if fast_x { (j - 1, i - 1) } else { (i - 1, j - 1) };
            2 * (slow * fast + f) + c
        };
        let dim = 2 * mx * my;
        let bw = 2 * (2 * fast + 2) + 1;
        let st = navier_stencil(&params);
        let s2 = 1.0 / (h * h);
        let interior = |i: i64, j: i64| i >= 1 && j >= 1 && i < nx as i64 && j < ny as i64;
        let refl = |v: i64, n: usize| if v < 0 { -v } else if v > n as i64 { 2 * n as i64 - v } else { v };
        let mut ll = BandMatrix::zeros(dim, bw, bw);
        let mut l = BandMatrix::zeros(dim, bw, bw);
        let mut eye = BandMatrix::zeros(dim, bw, bw);
        for i in 1..nx {
            for j in 1..ny {
                for c in 0..2 {
                    eye.add(index(i, j, c), index(i, j, c), 1.0);
                }
                for &(a, b, di, dj, c) in &st {
                    let (qi, qj) = (i as i64 + di, j as i64 + dj);
                    if interior(qi, qj) {
                        l.add(index(i, j, a), index(qi as usize, qj as usize, b), c * s2);
                    }
                    for &(_, b3, ei, ej, c2) in st.iter().filter(|t| t.0 == b) {
                        let (ri, rj) = (refl(qi + ei, nx), refl(qj + ej, ny));
                        if interior(ri, rj) {
                            ll.add(index(i, j, a), index(ri as usize, rj as usize, b3), c * c2 * s2 * s2);
                        }
                    }
                }
            }
        }
        Ok(Self { width, height, h, nx, ny, rho0, params, ll, l, eye })
    }

    pub fn unknowns(&self) -> usize {
        self.eye.n
    }

    /// Points per shear wavelength inside the scatterer at `omega`.
    pub fn points_per_wavelength(&self, omega: f64) -> f64 {
        let k = omega * (self.rho0.max(1.0) / self.params.mu()).sqrt();
        2.0 * PI / (k * self.h)
    }

    /// `(ℒ_h + ω²)(ℒ_h + ω²ρ₀)` assembled in band form.
    pub fn matrix(&self, omega: f64) -> BandMatrix {
        let w2 = omega * omega;
        let mut m = self.ll.clone();
        m.axpy(w2 * (1.0 + self.rho0), &self.l);
        m.axpy(w2 * w2 * self.rho0, &self.eye);
        m
    }

    /// Smallest singular value of the discrete operator at `omega`.
    pub fn sigma_min(&self, omega: f64) -> Result<f64> {
        let lu = self.matrix(omega).factor()?;
        Ok(lu.smallest_singular_value(200, 1e-8))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ItpDip {
    pub omega: f64,
    pub sigma_min: f64,
    /// `σ_min` at the dip over the median of the sampled `σ_min`.
    pub depth: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ItpReport {
    pub width: f64,
    pub height: f64,
    pub rho0: f64,
    pub cells: [usize; 2],
    pub h: f64,
    pub omegas: Vec<f64>,
    pub sigma_min: Vec<f64>,
    pub median: f64,
    /// Refined interior local minima, deepest first.
    pub dips: Vec<ItpDip>,
}

impl ItpReport {
    pub fn deepest(&self) -> Option<&ItpDip> {
        self.dips.first()
    }

    /// CSV with columns `omega,sigma_min,relative`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["omega", "sigma_min", "relative"])?;
        for (o, s) in self.omegas.iter().zip(&self.sigma_min) {
            wr.write_record(&[format!("{o:.17e}"), format!("{s:.17e}"), format!("{:.17e}", s / self.median)])?;
        }
        wr.flush()?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Serialize, serde::Deserialize)]
pub struct ItpScanOptions {
    pub samples: usize,
    /// Relative width at which golden-section refinement of a dip stops.
    pub refine_tol: f64,
    pub jobs: usize,
}

impl Default for ItpScanOptions {
    fn default() -> Self {
        Self { samples: 40, refine_tol: 1e-4, jobs: 1 }
    }
}

/// Scan `σ_min` of the discrete transmission operator over a frequency window.
pub fn itp_scan(
    width: f64,
    height: f64,
    rho0: f64,
    params: &LameParameters,
    omega_range: (f64, f64),
    cells: usize,
    opts: &ItpScanOptions,
) -> Result<ItpReport> {
    let (lo, hi) = omega_range;
    if !(lo > 0.0 && hi > lo) || opts.samples < 3 {
        return Err(Error::config(format!(
            "need 0 < lo < hi and at least 3 samples (got {omega_range:?}, {})",
            opts.samples
        )));
    }
    let op = ItpOperator::new(width, height, rho0, *params, cells)?;
    let ppw = op.points_per_wavelength(hi);
    if ppw < 8.0 - 1e-9 {
        return Err(Error::Resolution(format!(
            "{ppw:.2} points per shear wavelength at omega = {hi} (need 8)"
        )));
    }
    let omegas = linspace(lo, hi, opts.samples);
    let sigma_min = par_map(&omegas, opts.jobs, |&o| op.sigma_min(o)).into_iter().collect::<Result<Vec<_>>>()?;
    let med = median(&sigma_min);
    let candidates = local_minima(&sigma_min);
    let refined = par_map(&candidates, opts.jobs, |&i| {
        golden_min(|o| op.sigma_min(o), omegas[i - 1], omegas[i + 1], opts.refine_tol * omegas[i], 60)
    });
    let mut dips = Vec::new();
    for r in refined {
        let (omega, s) = r?;
        dips.push(ItpDip { omega, sigma_min: s, depth: s / med });
    }
    dips.sort_by(|a, b| a.depth.total_cmp(&b.depth));
    Ok(ItpReport {
        width,
        height,
        rho0,
        cells: [op.nx, op.ny],
        h: op.h,
        omegas,
        sigma_min,
        median: med,
        dips,
    })
}

/// Refine the dip nearest `omega_guess` on a given grid: coarse scan of
/// `±window` (relative) with `samples` points, then golden-section search.
pub fn refine_itp_dip(
    op: &ItpOperator,
    omega_guess: f64,
    window: f64,
    samples: usize,
    refine_tol: f64,
) -> Result<ItpDip> {
    let omegas = linspace(omega_guess * (1.0 - window), omega_guess * (1.0 + window), samples.max(3));
    let s = omegas.iter().map(|&o| op.sigma_min(o)).collect::<Result<Vec<_>>>()?;
    let i = (0..s.len()).min_by(|&a, &b| s[a].total_cmp(&s[b])).expect("nonempty");
    let (a, b) = (omegas[i.saturating_sub(1)], omegas[(i + 1).min(s.len() - 1)]);
    let (omega, sigma) = golden_min(|o| op.sigma_min(o), a, b, refine_tol * omega_guess, 60)?;
    Ok(ItpDip { omega, sigma_min: sigma, depth: sigma / median(&s) })
}
