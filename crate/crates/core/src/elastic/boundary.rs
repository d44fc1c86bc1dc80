use rand::Rng;

use super::params::{FieldSample, Jacobian, LameParameters};
use crate::{Error, Result, C64};

fn jac_of(sample: &FieldSample) -> Result<&Jacobian> {
    sample
        .jac
        .as_ref()
        .ok_or_else(|| Error::Precondition("boundary operator needs a Jacobian".into()))
}

fn d_nu(j: &Jacobian, nu: [f64; 2]) -> [C64; 2] {
    [j[0][0] * nu[0] + j[0][1] * nu[1], j[1][0] * nu[0] + j[1][1] * nu[1]]
}

fn div(j: &Jacobian) -> C64 {
    j[0][0] + j[1][1]
}

/// Scalar curl ∂₁u₂ − ∂₂u₁.
fn curl(j: &Jacobian) -> C64 {
    j[1][0] - j[0][1]
}

/// ν × c for a scalar c, i.e. c (ν₂, −ν₁).
fn nu_cross(nu: [f64; 2], c: C64) -> [C64; 2] {
    [c * nu[1], -c * nu[0]]
}

/// Traction `2μ ∂_ν u + λ ν div u + μ ν × curl u`.
pub fn traction(sample: &FieldSample, nu: [f64; 2], params: &LameParameters) -> Result<[C64; 2]> {
    let j = jac_of(sample)?;
    let (lam, mu) = (params.lambda(), params.mu());
    let dn = d_nu(j, nu);
    let dv = div(j);
    let nc = nu_cross(nu, curl(j));
    Ok([
        dn[0] * (2.0 * mu) + dv * (lam * nu[0]) + nc[0] * mu,
        dn[1] * (2.0 * mu) + dv * (lam * nu[1]) + nc[1] * mu,
    ])
}

/// `μ ∂_ν u + (λ+μ) ν div u`; equals the traction when u vanishes on the line.
pub fn traction_mu_form(sample: &FieldSample, nu: [f64; 2], params: &LameParameters) -> Result<[C64; 2]> {
    let j = jac_of(sample)?;
    let (lam, mu) = (params.lambda(), params.mu());
    let dn = d_nu(j, nu);
    let dv = div(j) * (lam + mu);
    Ok([dn[0] * mu + dv * nu[0], dn[1] * mu + dv * nu[1]])
}

/// `(λ+2μ) ∂_ν u + (λ+μ) ν × curl u`; the other vanishing-line form.
pub fn traction_curl_form(sample: &FieldSample, nu: [f64; 2], params: &LameParameters) -> Result<[C64; 2]> {
    let j = jac_of(sample)?;
    let (lam, mu) = (params.lambda(), params.mu());
    let dn = d_nu(j, nu);
    let nc = nu_cross(nu, curl(j));
    let pm = lam + 2.0 * mu;
    Ok([dn[0] * pm + nc[0] * (lam + mu), dn[1] * pm + nc[1] * (lam + mu)])
}

/// Günter derivative `∂_ν w − ν div w + ν × curl w`, a purely tangential operator.
pub fn guenter_derivative(sample: &FieldSample, nu: [f64; 2]) -> Result<[C64; 2]> {
    let j = jac_of(sample)?;
    let dn = d_nu(j, nu);
    let dv = div(j);
    let nc = nu_cross(nu, curl(j));
    Ok([dn[0] - dv * nu[0] + nc[0], dn[1] - dv * nu[1] + nc[1]])
}

/// Recover `∂_ν w` from the traction of a field vanishing on the boundary:
/// tangential part over μ plus normal part over λ+2μ.
pub fn normal_from_cauchy(tw: [C64; 2], nu: [f64; 2], params: &LameParameters) -> [C64; 2] {
    let tau = [-nu[1], nu[0]];
    let t = (tw[0] * tau[0] + tw[1] * tau[1]) / params.mu();
    let n = (tw[0] * nu[0] + tw[1] * nu[1]) / params.p_modulus();
    [t * tau[0] + n * nu[0], t * tau[1] + n * nu[1]]
}

/// Random polynomial field `w(x) = ((x−p)·ν) q(x)`, which vanishes on the line
/// through `p` with normal `ν`.
#[derive(Clone, Debug)]
pub struct VanishingField {
    pub point: [f64; 2],
    pub nu: [f64; 2],
    // coeffs[i][(a, b)] multiplies y₁^a y₂^b with y = x − p
    coeffs: [Vec<(u32, u32, C64)>; 2],
}

impl VanishingField {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, point: [f64; 2], nu: [f64; 2], degree: u32) -> Self {
        let n = nu[0].hypot(nu[1]);
        let nu = [nu[0] / n, nu[1] / n];
        let mut coeffs: [Vec<(u32, u32, C64)>; 2] = [Vec::new(), Vec::new()];
        for c in coeffs.iter_mut() {
            for a in 0..=degree {
                for b in 0..=(degree - a) {
                    let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    c.push((a, b, z));
                }
            }
        }
        Self { point, nu, coeffs }
    }

    /// Point on the vanishing line at signed arclength `s` from the anchor.
    pub fn line_point(&self, s: f64) -> [f64; 2] {
        [self.point[0] - s * self.nu[1], self.point[1] + s * self.nu[0]]
    }

    pub fn eval(&self, x: [f64; 2]) -> FieldSample {
        let y = [x[0] - self.point[0], x[1] - self.point[1]];
        let s = y[0] * self.nu[0] + y[1] * self.nu[1];
        let mut value = [C64::new(0.0, 0.0); 2];
        let mut jac = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut q = C64::new(0.0, 0.0);
            let mut dq = [C64::new(0.0, 0.0); 2];
            for &(a, b, z) in c {
                let pa = y[0].powi(a as i32);
                let pb = y[1].powi(b as i32);
                q += z * pa * pb;
                if a > 0 {
                    dq[0] += z * (a as f64) * y[0].powi(a as i32 - 1) * pb;
                }
                if b > 0 {
                    dq[1] += z * (b as f64) * pa * y[1].powi(b as i32 - 1);
                }
            }
            value[i] = q * s;
            for jx in 0..2 {
                jac[i][jx] = q * self.nu[jx] + dq[jx] * s;
            }
        }
        FieldSample::new(value, jac)
    }
}
