use std::f64::consts::PI;

use serde::Serialize;

use super::fft2::Fft2;
use super::gmres::{gmres, GmresOptions};
use super::green::{self_cell_integral, GreenKernel};
use super::grid::ScattererGrid;
use super::symmetry::D4Element;
use crate::elastic::{LameParameters, PlaneWave, Wavenumbers};
use crate::{Error, Result, C64};

/// Complex 2-vector per grid cell, indexed like [`ScattererGrid::fractions`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WaveField {
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<[C64; 2]>,
}

impl WaveField {
    pub fn zeros(grid: &ScattererGrid) -> Self {
        Self { nx: grid.nx, ny: grid.ny, values: vec![[C64::default(); 2]; grid.cells()] }
    }

    pub fn from_plane_wave(grid: &ScattererGrid, wave: &PlaneWave) -> Self {
        let values = (0..grid.cells()).map(|c| wave.value(grid.center_of(c))).collect();
        Self { nx: grid.nx, ny: grid.ny, values }
    }

    /// Component-major flattening `[u₁ over cells, u₂ over cells]`.
    pub fn flatten(&self) -> Vec<C64> {
        let mut out: Vec<C64> = self.values.iter().map(|v| v[0]).collect();
        out.extend(self.values.iter().map(|v| v[1]));
        out
    }

    pub fn from_flat(nx: usize, ny: usize, x: &[C64]) -> Self {
        let n = nx * ny;
        Self { nx, ny, values: (0..n).map(|c| [x[c], x[n + c]]).collect() }
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v[0].norm_sqr() + v[1].norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
    }

    /// Relative distance `‖self − other‖ / ‖other‖`.
    pub fn rel_diff(&self, other: &WaveField) -> f64 {
        let d: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a[0] - b[0]).norm_sqr() + (a[1] - b[1]).norm_sqr())
            .sum();
        d.sqrt() / other.norm()
    }

    /// The field `x ↦ s·g u(g⁻¹x)` on a grid invariant under `g`.
    pub fn transformed(&self, grid: &ScattererGrid, g: &D4Element, sign: f64) -> Result<WaveField> {
        let ginv = g.inverse();
        let mut values = Vec::with_capacity(self.values.len());
        for c in 0..grid.cells() {
            let src = grid
                .map_cell(&ginv, c)
                .ok_or_else(|| Error::Precondition("grid is not invariant under the symmetry".into()))?;
            let v = g.apply(self.values[src]);
            values.push([v[0] * sign, v[1] * sign]);
        }
        Ok(WaveField { nx: self.nx, ny: self.ny, values })
    }
}

/// Discretised Lippmann–Schwinger operator `u ↦ u − ω²(ρ₀−1) K_h u`.
///
/// `K_h` is the midpoint rule on cells weighted by area fraction, with the
/// self-cell replaced by the integral of Γ over the equal-area disk.
pub struct LsOperator {
    pub nx: usize,
    pub ny: usize,
    px: usize,
    py: usize,
    fractions: Vec<f64>,
    /// Spectra of (T₁₁, T₁₂, T₂₂), pre-divided by the FFT length.
    spectra: [Vec<C64>; 3],
    pub contrast: f64,
    pub k: Wavenumbers,
    pub self_cell: C64,
    fft: Fft2,
    bufs: [Vec<C64>; 2],
    pub matvecs: usize,
}

/// Minimum number of cells per shear wavelength inside the scatterer.
pub const MIN_CELLS_PER_WAVELENGTH: f64 = 8.0;

impl LsOperator {
    pub fn new(grid: &ScattererGrid, params: &LameParameters, omega: f64) -> Result<Self> {
        let k = params.wavenumbers(omega)?;
        let k_in = k.k_s * grid.rho0.max(1.0).sqrt();
        let cpw = 2.0 * PI / k_in / grid.h;
        if cpw < MIN_CELLS_PER_WAVELENGTH - 1e-9 {
            return Err(Error::Resolution(format!(
                "{cpw:.2} cells per shear wavelength at omega = {omega} (need {MIN_CELLS_PER_WAVELENGTH})"
            )));
        }
        let green = GreenKernel::new(*params, omega)?;
        let (nx, ny) = (grid.nx, grid.ny);
        let (px, py) = (2 * nx, 2 * ny);
        let h2 = grid.h * grid.h;
        let self_cell = self_cell_integral(params, &k, grid.h / PI.sqrt())?;
        let mut t = [vec![C64::default(); px * py], vec![C64::default(); px * py], vec![C64::default(); px * py]];
        for dy in 0..ny {
            for dx in 0..nx {
                let vals = if dx == 0 && dy == 0 {
                    [self_cell, C64::default(), self_cell]
                } else {
                    let g = green.eval_offset([dx as f64 * grid.h, dy as f64 * grid.h])?;
                    [g[0] * h2, g[1] * h2, g[2] * h2]
                };
                for (sx, sy) in [(1i64, 1i64), (-1, 1), (1, -1), (-1, -1)] {
                    if (sx < 0 && dx == 0) || (sy < 0 && dy == 0) {
                        continue;
                    }
                    let ix = (sx * dx as i64).rem_euclid(px as i64) as usize;
                    let iy = (sy * dy as i64).rem_euclid(py as i64) as usize;
                    let idx = iy * px + ix;
                    t[0][idx] = vals[0];
                    t[1][idx] = vals[1] * (sx * sy) as f64;
                    t[2][idx] = vals[2];
                }
            }
        }
        let mut fft = Fft2::new(px, py);
        let scale = 1.0 / (px * py) as f64;
        for s in t.iter_mut() {
            fft.forward(s);
            s.iter_mut().for_each(|z| *z *= scale);
        }
        Ok(Self {
            nx,
            ny,
            px,
            py,
            fractions: grid.fractions.clone(),
            spectra: t,
            contrast: omega * omega * (grid.rho0 - 1.0),
            k,
            self_cell,
            fft,
            bufs: [vec![C64::default(); px * py], vec![C64::default(); px * py]],
            matvecs: 0,
        })
    }

    pub fn unknowns(&self) -> usize {
        2 * self.nx * self.ny
    }

    /// `out = K_h x` on component-major vectors.
    pub fn apply_k(&mut self, x: &[C64], out: &mut [C64]) {
        let n = self.nx * self.ny;
        let [b0, b1] = &mut self.bufs;
        b0.iter_mut().for_each(|z| *z = C64::default());
        b1.iter_mut().for_each(|z| *z = C64::default());
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                let c = iy * self.nx + ix;
                let f = self.fractions[c];
                b0[iy * self.px + ix] = x[c] * f;
                b1[iy * self.px + ix] = x[n + c] * f;
            }
        }
        self.fft.forward(b0);
        self.fft.forward(b1);
        let [s11, s12, s22] = &self.spectra;
        for i in 0..self.px * self.py {
            let (a, b) = (b0[i], b1[i]);
            b0[i] = s11[i] * a + s12[i] * b;
            b1[i] = s12[i] * a + s22[i] * b;
        }
        self.fft.inverse(b0);
        self.fft.inverse(b1);
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                let c = iy * self.nx + ix;
                out[c] = b0[iy * self.px + ix];
                out[n + c] = b1[iy * self.px + ix];
            }
        }
        self.matvecs += 1;
    }

    /// `out = (I − ω²(ρ₀−1)K_h) x`.
    pub fn apply(&mut self, x: &[C64], out: &mut [C64]) {
        self.apply_k(x, out);
        let c = self.contrast;
        out.iter_mut().zip(x).for_each(|(o, xi)| *o = xi - *o * c);
    }

    /// First Born approximation `u_in + ω²(ρ₀−1) K_h u_in`.
    pub fn born(&mut self, incident: &WaveField) -> WaveField {
        let x = incident.flatten();
        let mut kx = vec![C64::default(); x.len()];
        self.apply_k(&x, &mut kx);
        let y: Vec<C64> = x.iter().zip(&kx).map(|(a, b)| a + b * self.contrast).collect();
        WaveField::from_flat(self.nx, self.ny, &y)
    }

    /// Relative residual `‖(I − ω²(ρ₀−1)K_h)u − u_in‖ / ‖u_in‖`.
    pub fn residual(&mut self, u: &WaveField, incident: &WaveField) -> f64 {
        let x = u.flatten();
        let mut ax = vec![C64::default(); x.len()];
        self.apply(&x, &mut ax);
        let b = incident.flatten();
        let r: f64 = ax.iter().zip(&b).map(|(a, b)| (a - b).norm_sqr()).sum();
        r.sqrt() / incident.norm()
    }

    pub fn solve(&mut self, incident: &WaveField, opts: &SolveOptions) -> Result<Solution> {
        let b = incident.flatten();
        let out = gmres(|x, y| self.apply(x, y), &b, None, &opts.gmres());
        if !out.converged {
            return Err(Error::Solver {
                iterations: out.iterations,
                residual: out.residual,
                history: out.history,
                context: String::new(),
            });
        }
        Ok(Solution {
            field: WaveField::from_flat(self.nx, self.ny, &out.x),
            iterations: out.iterations,
            residual: out.residual,
            history: out.history,
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize, serde::Deserialize)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub restart: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { tol: 1e-8, max_iter: 2000, restart: 300 }
    }
}

impl SolveOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    fn gmres(&self) -> GmresOptions {
        GmresOptions { tol: self.tol, restart: self.restart, max_iter: self.max_iter }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    pub field: WaveField,
    pub iterations: usize,
    pub residual: f64,
    pub history: Vec<f64>,
}

/// Total field on the scatterer for one incident plane wave.
pub fn ls_solve(
    grid: &ScattererGrid,
    incident: &PlaneWave,
    params: &LameParameters,
    omega: f64,
    tol: f64,
) -> Result<Solution> {
    if !(tol > 0.0) {
        return Err(Error::config(format!("tol must be positive (got {tol})")));
    }
    let mut op = LsOperator::new(grid, params, omega)?;
    let uin = WaveField::from_plane_wave(grid, incident);
    op.solve(&uin, &SolveOptions::with_tol(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elastic::{Direction, WaveKind};
    use crate::scattering::{kupradze_green, Geometry};

    #[test]
    fn fft_matches_direct_sum() {
        let grid = ScattererGrid::new(Geometry::LShape { size: 1.0, notch: 0.4 }, 10, 1.7).unwrap();
        let p = LameParameters::new(0.5, 1.0).unwrap();
        let om = 3.0;
        let mut op = LsOperator::new(&grid, &p, om).unwrap();
        let n = grid.cells();
        let x: Vec<C64> = (0..2 * n).map(|i| C64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos())).collect();
        let mut y = vec![C64::default(); 2 * n];
        op.apply_k(&x, &mut y);
        for i in [0, 17, n - 1] {
            let mut s = [C64::default(); 2];
            for j in 0..n {
                let f = grid.fractions[j];
                let m = if i == j {
                    [[op.self_cell, C64::default()], [C64::default(), op.self_cell]]
                } else {
                    let g = kupradze_green(grid.center_of(i), grid.center_of(j), &p, om).unwrap();
                    let h2 = grid.h * grid.h;
                    [[g[0][0] * h2, g[0][1] * h2], [g[1][0] * h2, g[1][1] * h2]]
                };
                for a in 0..2 {
                    s[a] += (m[a][0] * x[j] + m[a][1] * x[n + j]) * f;
                }
            }
            assert!((s[0] - y[i]).norm() < 1e-12 && (s[1] - y[n + i]).norm() < 1e-12);
        }
    }

    #[test]
    fn resolution_refused() {
        let grid = ScattererGrid::new(Geometry::Disk { radius: 0.5 }, 8, 2.0).unwrap();
        let p = LameParameters::new(1.0, 1.0).unwrap();
        assert!(matches!(LsOperator::new(&grid, &p, 40.0), Err(Error::Resolution(_))));
    }

    #[test]
    fn converges_with_small_residual() {
        let grid = ScattererGrid::new(Geometry::Disk { radius: 0.5 }, 16, 2.0).unwrap();
        let p = LameParameters::new(1.0, 1.0).unwrap();
        let k = p.wavenumbers(4.0).unwrap();
        let pw = PlaneWave::new(WaveKind::S, Direction::from_angle(0.3), k);
        let sol = ls_solve(&grid, &pw, &p, 4.0, 1e-10).unwrap();
        let mut op = LsOperator::new(&grid, &p, 4.0).unwrap();
        let uin = WaveField::from_plane_wave(&grid, &pw);
        assert!(op.residual(&sol.field, &uin) <= 1.01e-10);
    }
}
