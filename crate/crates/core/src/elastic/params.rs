use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Jacobian of a complex 2-vector field, `jac[i][j] = ∂_j u_i`.
pub type Jacobian = [[C64; 2]; 2];

/// Elastic constants of an isotropic medium.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LameParameters {
    lambda: f64,
    mu: f64,
}

impl LameParameters {
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        let mut errs = Vec::new();
        if !(lambda.is_finite() && mu.is_finite()) {
            errs.push("Lamé parameters must be finite".to_string());
        }
        if !(mu > 0.0) {
            errs.push(format!("mu > 0 required (got mu = {mu})"));
        }
        if !(lambda + mu > 0.0) {
            errs.push(format!("lambda + mu > 0 required (got {})", lambda + mu));
        }
        if errs.is_empty() {
            Ok(Self { lambda, mu })
        } else {
            Err(Error::Config(errs))
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// P-wave modulus λ + 2μ.
    pub fn p_modulus(&self) -> f64 {
        self.lambda + 2.0 * self.mu
    }

    pub fn wavenumbers(&self, omega: f64) -> Result<Wavenumbers> {
        Wavenumbers::new(*self, omega)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Wavenumbers {
    pub omega: f64,
    pub k_p: f64,
    pub k_s: f64,
}

impl Wavenumbers {
    pub fn new(params: LameParameters, omega: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::config(format!("omega must be positive (got {omega})")));
        }
        Ok(Self {
            omega,
            k_p: omega / params.p_modulus().sqrt(),
            k_s: omega / params.mu().sqrt(),
        })
    }

    pub fn k(&self, kind: WaveKind) -> f64 {
        match kind {
            WaveKind::P => self.k_p,
            WaveKind::S => self.k_s,
        }
    }
}

/// Unit direction together with its +90° rotation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub d: [f64; 2],
    pub d_perp: [f64; 2],
}

impl Direction {
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { d: [c, s], d_perp: [-s, c] }
    }

    pub fn new(d: [f64; 2]) -> Result<Self> {
        let n = d[0].hypot(d[1]);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::Domain("direction must be a nonzero finite vector".into()));
        }
        let d = [d[0] / n, d[1] / n];
        Ok(Self { d, d_perp: [-d[1], d[0]] })
    }

    pub fn angle(&self) -> f64 {
        self.d[1].atan2(self.d[0])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveKind {
    #[serde(alias = "p")]
    P,
    #[serde(alias = "s")]
    S,
}

/// Unit-amplitude plane wave `d e^{i k_p d·x}` or `d⊥ e^{i k_s d·x}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneWave {
    pub kind: WaveKind,
    pub direction: Direction,
    pub wavenumbers: Wavenumbers,
}

impl PlaneWave {
    pub fn new(kind: WaveKind, direction: Direction, wavenumbers: Wavenumbers) -> Self {
        Self { kind, direction, wavenumbers }
    }

    pub fn polarization(&self) -> [f64; 2] {
        match self.kind {
            WaveKind::P => self.direction.d,
            WaveKind::S => self.direction.d_perp,
        }
    }

    pub fn k(&self) -> f64 {
        self.wavenumbers.k(self.kind)
    }

    /// Value only; the hot path of the volume solver.
    pub fn value(&self, x: [f64; 2]) -> [C64; 2] {
        let d = self.direction.d;
        let ph = C64::from_polar(1.0, self.k() * (d[0] * x[0] + d[1] * x[1]));
        let a = self.polarization();
        [ph * a[0], ph * a[1]]
    }

    /// Value with its analytic Jacobian.
    pub fn eval(&self, x: [f64; 2]) -> FieldSample {
        let d = self.direction.d;
        let a = self.polarization();
        let k = self.k();
        let ph = C64::from_polar(1.0, k * (d[0] * x[0] + d[1] * x[1]));
        let ikph = C64::new(0.0, k) * ph;
        FieldSample {
            value: [ph * a[0], ph * a[1]],
            jac: Some([
                [ikph * a[0] * d[0], ikph * a[0] * d[1]],
                [ikph * a[1] * d[0], ikph * a[1] * d[1]],
            ]),
        }
    }
}

/// Point on a boundary with its tangent and outward normal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySegment {
    pub point: [f64; 2],
    pub tau: [f64; 2],
    pub nu: [f64; 2],
}

impl BoundarySegment {
    /// The tangent is the normal rotated by +90°, so (ν, τ) is right-handed.
    pub fn from_normal(point: [f64; 2], nu: [f64; 2]) -> Result<Self> {
        let n = nu[0].hypot(nu[1]);
        if !(n > 0.0) {
            return Err(Error::Domain("normal must be nonzero".into()));
        }
        let nu = [nu[0] / n, nu[1] / n];
        Ok(Self { point, tau: [-nu[1], nu[0]], nu })
    }
}

/// A complex 2-vector, optionally with its Jacobian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSample {
    pub value: [C64; 2],
    pub jac: Option<Jacobian>,
}

impl FieldSample {
    pub fn new(value: [C64; 2], jac: Jacobian) -> Self {
        Self { value, jac: Some(jac) }
    }

    pub fn value_only(value: [C64; 2]) -> Self {
        Self { value, jac: None }
    }
}
