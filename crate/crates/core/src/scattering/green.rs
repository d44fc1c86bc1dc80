use std::f64::consts::PI;

use super::super::elastic::{LameParameters, Wavenumbers};
use crate::special::{hankel012, hankel1};
use crate::{Error, Result, C64};

/// Pure evaluation of the outgoing Kupradze tensor for fixed (λ, μ, ω).
#[derive(Clone, Copy, Debug)]
pub struct GreenKernel {
    pub params: LameParameters,
    pub k: Wavenumbers,
}

/// Hessian of `H₀(k|x|)` in closed form:
/// `k² H₂ x̂x̂ᵀ − (k²/2)(H₀ + H₂) I`.
fn hankel_hessian(k: f64, r: f64, xh: [f64; 2]) -> Result<[C64; 3]> {
    let [h0, _, h2] = hankel012(k * r)?;
    let k2 = k * k;
    let iso = (h0 + h2) * (-0.5 * k2);
    Ok([h2 * (k2 * xh[0] * xh[0]) + iso, h2 * (k2 * xh[0] * xh[1]), h2 * (k2 * xh[1] * xh[1]) + iso])
}

impl GreenKernel {
    pub fn new(params: LameParameters, omega: f64) -> Result<Self> {
        Ok(Self { params, k: params.wavenumbers(omega)? })
    }

    /// Components (Γ₁₁, Γ₁₂, Γ₂₂) at offset `d = x − y ≠ 0`.
    pub fn eval_offset(&self, d: [f64; 2]) -> Result<[C64; 3]> {
        let r = d[0].hypot(d[1]);
        if !(r > 0.0) {
            return Err(Error::Domain("Green tensor evaluated at coincident points".into()));
        }
        let xh = [d[0] / r, d[1] / r];
        let hs = hankel_hessian(self.k.k_s, r, xh)?;
        let hp = hankel_hessian(self.k.k_p, r, xh)?;
        let iso = hankel1(0, self.k.k_s * r)? * C64::new(0.0, 0.25 / self.params.mu());
        let c = C64::new(0.0, 0.25 / (self.k.omega * self.k.omega));
        Ok([iso + c * (hs[0] - hp[0]), c * (hs[1] - hp[1]), iso + c * (hs[2] - hp[2])])
    }
}

/// Γ(x, y) as a 2×2 matrix.
pub fn kupradze_green(x: [f64; 2], y: [f64; 2], params: &LameParameters, omega: f64) -> Result<[[C64; 2]; 2]> {
    let g = GreenKernel::new(*params, omega)?.eval_offset([x[0] - y[0], x[1] - y[1]])?;
    Ok([[g[0], g[1]], [g[1], g[2]]])
}

/// Integral of Γ over a disk of radius `a` centred at the source; the
/// result is a multiple of the identity.
pub fn self_cell_integral(params: &LameParameters, k: &Wavenumbers, a: f64) -> Result<C64> {
    let (ks, kp) = (k.k_s, k.k_p);
    let h1s = hankel1(1, ks * a)?;
    let h1p = hankel1(1, kp * a)?;
    let iso = C64::new(0.0, 0.25 / params.mu()) * (h1s * (2.0 * PI * a / ks) + C64::new(0.0, 4.0 / (ks * ks)));
    let hess = C64::new(0.0, 0.25 / (k.omega * k.omega)) * (PI * a) * (h1p * kp - h1s * ks);
    Ok(iso + hess)
}

/// Far-field constants `(c_p, c_s)`:
/// `c_p = e^{iπ/4} / ((λ+2μ)√(8πk_p))`, `c_s = e^{iπ/4} / (μ√(8πk_s))`.
pub fn farfield_constants(params: &LameParameters, k: &Wavenumbers) -> (C64, C64) {
    let e = C64::from_polar(1.0, PI / 4.0);
    (
        e / (params.p_modulus() * (8.0 * PI * k.k_p).sqrt()),
        e / (params.mu() * (8.0 * PI * k.k_s).sqrt()),
    )
}

/// Numerical estimate of `(c_p, c_s)` from Γ at distance `r` along `x̂`:
/// `√r e^{−ikr} e^{ik x̂·y}` times the x̂x̂ (resp. x̂⊥x̂⊥) component.
/// `wavelengths` sets r in units of the respective wavelength. The other
/// wave type leaks in at relative order 1/(kr) with phase `e^{i(k_s−k_p)r}`,
/// so the estimate is averaged over one period of that beat.
pub fn calibrate_farfield_constants(
    params: &LameParameters,
    omega: f64,
    xhat: [f64; 2],
    y: [f64; 2],
    wavelengths: f64,
) -> Result<(C64, C64)> {
    const SAMPLES: usize = 64;
    let g = GreenKernel::new(*params, omega)?;
    let n = xhat[0].hypot(xhat[1]);
    let xh = [xhat[0] / n, xhat[1] / n];
    let xp = [-xh[1], xh[0]];
    let beat = 2.0 * PI / (g.k.k_s - g.k.k_p);
    let est = |kk: f64, v: [f64; 2]| -> Result<C64> {
        let r0 = wavelengths * 2.0 * PI / kk;
        let mut acc = C64::default();
        for j in 0..SAMPLES {
            let r = r0 + beat * j as f64 / SAMPLES as f64;
            let x = [r * xh[0], r * xh[1]];
            let m = g.eval_offset([x[0] - y[0], x[1] - y[1]])?;
            let proj = m[0] * (v[0] * v[0]) + m[1] * (2.0 * v[0] * v[1]) + m[2] * (v[1] * v[1]);
            let phase = C64::from_polar(1.0, -kk * r + kk * (xh[0] * y[0] + xh[1] * y[1]));
            acc += proj * phase * r.sqrt();
        }
        Ok(acc / SAMPLES as f64)
    };
    Ok((est(g.k.k_p, xh)?, est(g.k.k_s, xp)?))
}
