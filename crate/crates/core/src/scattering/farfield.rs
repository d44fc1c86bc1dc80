use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use super::green::{farfield_constants, GreenKernel};
use super::grid::ScattererGrid;
use super::solver::WaveField;
use crate::elastic::LameParameters;
use crate::{Error, Result, C64};

/// P and S far-field amplitudes on equispaced observation directions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FarFieldPattern {
    pub angles: Vec<f64>,
    /// Coefficient along x̂.
    pub up: Vec<C64>,
    /// Coefficient along x̂⊥.
    pub us: Vec<C64>,
}

impl FarFieldPattern {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// `u^∞(x̂) = u_p^∞ x̂ + u_s^∞ x̂⊥` at node `i`.
    pub fn reconstruct(&self, i: usize) -> [C64; 2] {
        let (s, c) = self.angles[i].sin_cos();
        [self.up[i] * c - self.us[i] * s, self.up[i] * s + self.us[i] * c]
    }

    pub fn norm(&self) -> f64 {
        self.up.iter().chain(&self.us).map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// CSV with columns `angle,up_re,up_im,us_re,us_im`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["angle", "up_re", "up_im", "us_re", "us_im"])?;
        for i in 0..self.len() {
            wr.write_record(&[
                format!("{:.17e}", self.angles[i]),
                format!("{:.17e}", self.up[i].re),
                format!("{:.17e}", self.up[i].im),
                format!("{:.17e}", self.us[i].re),
                format!("{:.17e}", self.us[i].im),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// Equispaced angles `2πi/n`.
pub fn direction_angles(n: usize) -> Vec<f64> {
    (0..n).map(|i| 2.0 * PI * i as f64 / n as f64).collect()
}

/// Phase tables for repeated far-field evaluation on one grid and frequency.
pub struct FarFieldEvaluator {
    pub n: usize,
    angles: Vec<f64>,
    cells: Vec<usize>,
    /// `f e^{−ik_p x̂_i·y}` and `f e^{−ik_s x̂_i·y}` for occupied cells, row per direction.
    phase_p: Vec<C64>,
    phase_s: Vec<C64>,
    cp: C64,
    cs: C64,
}

impl FarFieldEvaluator {
    pub fn new(grid: &ScattererGrid, params: &LameParameters, omega: f64, n: usize) -> Result<Self> {
        let k = params.wavenumbers(omega)?;
        let (cp, cs) = farfield_constants(params, &k);
        let pref = omega * omega * (grid.rho0 - 1.0) * grid.h * grid.h;
        let angles = direction_angles(n);
        let cells: Vec<usize> = (0..grid.cells()).filter(|&c| grid.fractions[c] != 0.0).collect();
        let mut phase_p = Vec::with_capacity(n * cells.len());
        let mut phase_s = Vec::with_capacity(n * cells.len());
        for &t in &angles {
            let (s, c) = t.sin_cos();
            for &cell in &cells {
                let y = grid.center_of(cell);
                let proj = c * y[0] + s * y[1];
                let f = grid.fractions[cell];
                phase_p.push(C64::from_polar(f, -k.k_p * proj));
                phase_s.push(C64::from_polar(f, -k.k_s * proj));
            }
        }
        Ok(Self { n, angles, cells, phase_p, phase_s, cp: cp * pref, cs: cs * pref })
    }

    pub fn eval(&self, u: &WaveField) -> FarFieldPattern {
        let m = self.cells.len();
        let mut up = Vec::with_capacity(self.n);
        let mut us = Vec::with_capacity(self.n);
        for (i, &t) in self.angles.iter().enumerate() {
            let (s, c) = t.sin_cos();
            let (mut ap, mut as_) = (C64::default(), C64::default());
            let (pp, ps) = (&self.phase_p[i * m..(i + 1) * m], &self.phase_s[i * m..(i + 1) * m]);
            for (j, &cell) in self.cells.iter().enumerate() {
                let v = u.values[cell];
                ap += pp[j] * (v[0] * c + v[1] * s);
                as_ += ps[j] * (v[1] * c - v[0] * s);
            }
            up.push(self.cp * ap);
            us.push(self.cs * as_);
        }
        FarFieldPattern { angles: self.angles.clone(), up, us }
    }
}

/// Far-field pattern of the scattered field generated by the total field `u`.
pub fn far_field(
    u: &WaveField,
    grid: &ScattererGrid,
    params: &LameParameters,
    omega: f64,
    n: usize,
) -> Result<FarFieldPattern> {
    if u.values.len() != grid.cells() {
        return Err(Error::Precondition("field and grid sizes differ".into()));
    }
    Ok(FarFieldEvaluator::new(grid, params, omega, n)?.eval(u))
}

/// Scattered field `ω²(ρ₀−1) Σ f h² Γ(x, y) u(y)` at a point outside the grid.
pub fn scattered_field_at(
    u: &WaveField,
    grid: &ScattererGrid,
    params: &LameParameters,
    omega: f64,
    x: [f64; 2],
) -> Result<[C64; 2]> {
    let g = GreenKernel::new(*params, omega)?;
    let pref = omega * omega * (grid.rho0 - 1.0) * grid.h * grid.h;
    let mut out = [C64::default(); 2];
    for (cell, v) in u.values.iter().enumerate() {
        let f = grid.fractions[cell];
        if f == 0.0 {
            continue;
        }
        let y = grid.center_of(cell);
        let m = g.eval_offset([x[0] - y[0], x[1] - y[1]])?;
        out[0] += (m[0] * v[0] + m[1] * v[1]) * (f * pref);
        out[1] += (m[1] * v[0] + m[2] * v[1]) * (f * pref);
    }
    Ok(out)
}

/// Relative mismatch between the volume potential at distance `r` along
/// node `i` and the far-field asymptotics built from `pattern`.
pub fn far_field_direct_check(
    u: &WaveField,
    grid: &ScattererGrid,
    params: &LameParameters,
    omega: f64,
    pattern: &FarFieldPattern,
    i: usize,
    r: f64,
) -> Result<f64> {
    let k = params.wavenumbers(omega)?;
    let (s, c) = pattern.angles[i].sin_cos();
    let direct = scattered_field_at(u, grid, params, omega, [r * c, r * s])?;
    let ep = C64::from_polar(1.0 / r.sqrt(), k.k_p * r) * pattern.up[i];
    let es = C64::from_polar(1.0 / r.sqrt(), k.k_s * r) * pattern.us[i];
    let asym = [ep * c - es * s, ep * s + es * c];
    let num = ((direct[0] - asym[0]).norm_sqr() + (direct[1] - asym[1]).norm_sqr()).sqrt();
    let den = (asym[0].norm_sqr() + asym[1].norm_sqr()).sqrt();
    Ok(num / den)
}
