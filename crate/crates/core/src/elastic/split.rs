use std::f64::consts::PI;

use serde::Serialize;

use super::fd::central_weights;
use super::params::Wavenumbers;
use crate::{Error, Result, C64};

/// Stencil radius; radius 4 gives eighth-order central differences.
const RADIUS: usize = 4;

/// Complex 2-vector field on a uniform grid with a validity mask.
/// Index `iy * nx + ix` is the point `origin + h (ix, iy)`.
#[derive(Clone, Debug)]
pub struct GridField {
    pub origin: [f64; 2],
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<[C64; 2]>,
    pub mask: Vec<bool>,
}

impl GridField {
    pub fn sample<M, F>(origin: [f64; 2], h: f64, nx: usize, ny: usize, inside: M, f: F) -> Self
    where
        M: Fn([f64; 2]) -> bool,
        F: Fn([f64; 2]) -> [C64; 2],
    {
        let zero = [C64::new(0.0, 0.0); 2];
        let mut values = vec![zero; nx * ny];
        let mut mask = vec![false; nx * ny];
        for iy in 0..ny {
            for ix in 0..nx {
                let x = [origin[0] + h * ix as f64, origin[1] + h * iy as f64];
                if inside(x) {
                    values[iy * nx + ix] = f(x);
                    mask[iy * nx + ix] = true;
                }
            }
        }
        Self { origin, h, nx, ny, values, mask }
    }

    /// Samples `f` on the annulus `r_in ≤ |x − c| ≤ r_out`.
    pub fn annulus<F>(center: [f64; 2], r_in: f64, r_out: f64, h: f64, f: F) -> Self
    where
        F: Fn([f64; 2]) -> [C64; 2],
    {
        let n = (2.0 * r_out / h).ceil() as usize + 1;
        let origin = [center[0] - h * (n / 2) as f64, center[1] - h * (n / 2) as f64];
        Self::sample(
            origin,
            h,
            n,
            n,
            |x| {
                let r = (x[0] - center[0]).hypot(x[1] - center[1]);
                r >= r_in && r <= r_out
            },
            f,
        )
    }

    pub fn point(&self, ix: usize, iy: usize) -> [f64; 2] {
        [self.origin[0] + self.h * ix as f64, self.origin[1] + self.h * iy as f64]
    }

    fn empty_like(&self) -> Self {
        Self {
            origin: self.origin,
            h: self.h,
            nx: self.nx,
            ny: self.ny,
            values: vec![[C64::new(0.0, 0.0); 2]; self.nx * self.ny],
            mask: vec![false; self.nx * self.ny],
        }
    }

    /// True if the full stencil square around (ix, iy) lies in the mask.
    fn stencil_inside(&self, ix: usize, iy: usize) -> bool {
        if ix < RADIUS || iy < RADIUS || ix + RADIUS >= self.nx || iy + RADIUS >= self.ny {
            return false;
        }
        for dy in 0..=2 * RADIUS {
            for dx in 0..=2 * RADIUS {
                if !self.mask[(iy + dy - RADIUS) * self.nx + ix + dx - RADIUS] {
                    return false;
                }
            }
        }
        true
    }

    /// Second derivatives (∂₁₁, ∂₁₂, ∂₂₂) of both components at a point whose
    /// stencil is inside the mask.
    fn hessian(&self, ix: usize, iy: usize, w1: &[f64], w2: &[f64]) -> [[C64; 3]; 2] {
        let mut out = [[C64::new(0.0, 0.0); 3]; 2];
        let at = |dx: usize, dy: usize| self.values[(iy + dy - RADIUS) * self.nx + ix + dx - RADIUS];
        for a in 0..=2 * RADIUS {
            let ux = at(a, RADIUS);
            let uy = at(RADIUS, a);
            for c in 0..2 {
                out[c][0] += ux[c] * w2[a];
                out[c][2] += uy[c] * w2[a];
            }
            if w1[a] == 0.0 {
                continue;
            }
            for b in 0..=2 * RADIUS {
                if w1[b] == 0.0 {
                    continue;
                }
                let u = at(a, b);
                for c in 0..2 {
                    out[c][1] += u[c] * (w1[a] * w1[b]);
                }
            }
        }
        let h2 = self.h * self.h;
        for c in out.iter_mut() {
            for v in c.iter_mut() {
                *v /= h2;
            }
        }
        out
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|m| **m).count()
    }
}

/// Split a Navier solution into `u_p = −k_p⁻² ∇div u` and
/// `u_s = k_s⁻² curl⃗ curl u`. Outputs are defined where the stencil fits.
pub fn helmholtz_split(u: &GridField, k: &Wavenumbers) -> Result<(GridField, GridField)> {
    let ppw = 2.0 * PI / (k.k_s * u.h);
    if ppw < 5.0 {
        return Err(Error::Resolution(format!(
            "{ppw:.2} points per shear wavelength, at least 5 are needed"
        )));
    }
    let w1 = central_weights(1, RADIUS);
    let w2 = central_weights(2, RADIUS);
    let mut up = u.empty_like();
    let mut us = u.empty_like();
    let (kp2, ks2) = (k.k_p * k.k_p, k.k_s * k.k_s);
    for iy in 0..u.ny {
        for ix in 0..u.nx {
            if !u.stencil_inside(ix, iy) {
                continue;
            }
            let [h1, h2] = u.hessian(ix, iy, &w1, &w2);
            // ∇div u = (∂₁₁u₁ + ∂₁₂u₂, ∂₁₂u₁ + ∂₂₂u₂)
            let gd = [h1[0] + h2[1], h1[1] + h2[2]];
            // curl⃗ curl u = (∂₁₂u₂ − ∂₂₂u₁, ∂₁₂u₁ − ∂₁₁u₂)
            let cc = [h2[1] - h1[2], h1[1] - h2[0]];
            let i = iy * u.nx + ix;
            up.values[i] = [-gd[0] / kp2, -gd[1] / kp2];
            us.values[i] = [cc[0] / ks2, cc[1] / ks2];
            up.mask[i] = true;
            us.mask[i] = true;
        }
    }
    Ok((up, us))
}

/// Diagnostics for a split: reconstruction error and Helmholtz residuals,
/// all relative to the largest input magnitude.
#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub points: usize,
    pub sum_error: f64,
    pub residual_p: f64,
    pub residual_s: f64,
}

impl SplitReport {
    pub fn compute(u: &GridField, up: &GridField, us: &GridField, k: &Wavenumbers) -> Self {
        let scale = u
            .values
            .iter()
            .zip(&u.mask)
            .filter(|(_, m)| **m)
            .map(|(v, _)| v[0].norm().max(v[1].norm()))
            .fold(0.0, f64::max);
        let mut sum_error: f64 = 0.0;
        let mut points = 0;
        for i in 0..u.values.len() {
            if up.mask[i] {
                points += 1;
                for c in 0..2 {
                    let e = (up.values[i][c] + us.values[i][c] - u.values[i][c]).norm();
                    sum_error = sum_error.max(e);
                }
            }
        }
        let w1 = central_weights(1, RADIUS);
        let w2 = central_weights(2, RADIUS);
        let resid = |f: &GridField, kk: f64| {
            let mut r: f64 = 0.0;
            for iy in 0..f.ny {
                for ix in 0..f.nx {
                    if f.stencil_inside(ix, iy) {
                        let hs = f.hessian(ix, iy, &w1, &w2);
                        let v = f.values[iy * f.nx + ix];
                        for c in 0..2 {
                            r = r.max((hs[c][0] + hs[c][2] + v[c] * (kk * kk)).norm() / (kk * kk));
                        }
                    }
                }
            }
            r
        };
        Self {
            points,
            sum_error: sum_error / scale,
            residual_p: resid(up, k.k_p) / scale,
            residual_s: resid(us, k.k_s) / scale,
        }
    }
}
