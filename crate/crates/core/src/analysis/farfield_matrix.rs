use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use super::parallel::par_map;
use crate::elastic::{Direction, LameParameters, PlaneWave, WaveKind};
use crate::scattering::{
    DirectionOrbits, FarFieldEvaluator, FarFieldPattern, LsOperator, ScattererGrid, SolveOptions, WaveField,
};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, Serialize, serde::Deserialize)]
pub struct AssemblyOptions {
    pub solve: SolveOptions,
    /// Solve only one incident direction per orbit of the grid's lattice symmetries.
    pub use_symmetry: bool,
    pub jobs: usize,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        Self { solve: SolveOptions::default(), use_symmetry: true, jobs: 1 }
    }
}

/// Discretised far-field operator on `n` equispaced nodes.
///
/// Rows are `[u_p^∞(x̂_0..n); u_s^∞(x̂_0..n)]`, columns are P then S incident
/// plane waves with directions `d_0..n`. Column `j` of [`FarFieldMatrix::matrix`]
/// is the raw far field times `(2π/n) e^{−iπ/4} √(k/ω)`.
#[derive(Clone, Debug)]
pub struct FarFieldMatrix {
    pub n: usize,
    pub omega: f64,
    pub scatterer: String,
    pub raw: DMatrix<C64>,
    /// Column factors for P and S incidence.
    pub weights: [C64; 2],
    pub solves: usize,
    pub iterations: usize,
}

/// Herglotz column factor `(2π/n) e^{−iπ/4} √(k/ω)`.
pub fn herglotz_weight(k: f64, omega: f64, n: usize) -> C64 {
    C64::from_polar((2.0 * PI / n as f64) * (k / omega).sqrt(), -PI / 4.0)
}

impl FarFieldMatrix {
    pub fn matrix(&self) -> DMatrix<C64> {
        let mut m = self.raw.clone();
        for j in 0..2 * self.n {
            let w = self.weights[j / self.n];
            m.column_mut(j).iter_mut().for_each(|z| *z *= w);
        }
        m
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        sorted_singular_values(self.matrix())
    }

    /// Far-field pattern of incident wave `kind` along node `j`.
    pub fn pattern(&self, kind: WaveKind, j: usize) -> FarFieldPattern {
        let col = j + if kind == WaveKind::S { self.n } else { 0 };
        FarFieldPattern {
            angles: crate::scattering::direction_angles(self.n),
            up: (0..self.n).map(|i| self.raw[(i, col)]).collect(),
            us: (0..self.n).map(|i| self.raw[(self.n + i, col)]).collect(),
        }
    }

    /// The matrix in the unitary Fourier basis, keeping angular modes `−m/2..m/2`
    /// of each P/S block on both sides. Sizes with the same `m` are comparable
    /// across different `n`.
    pub fn band_restricted(&self, m: usize) -> DMatrix<C64> {
        let n = self.n;
        let f = self.matrix();
        let modes: Vec<i64> = (0..m as i64).map(|q| q - m as i64 / 2).collect();
        let u = DMatrix::from_fn(2 * m, 2 * n, |r, c| {
            if r / m != c / n {
                return C64::default();
            }
            let t = 2.0 * PI * (c % n) as f64 / n as f64;
            C64::from_polar(1.0 / (n as f64).sqrt(), -(modes[r % m] as f64) * t)
        });
        &u * f * u.adjoint()
    }
}

pub fn sorted_singular_values(m: DMatrix<C64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Median of a list (mean of the two central values for even length).
pub fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Pattern of the incident wave `g d_r` from the pattern for `d_r`:
/// `u_p^∞ ↦ s u_p^∞(gᵀx̂)`, `u_s^∞ ↦ s det(g) u_s^∞(gᵀx̂)`.
fn transform_pattern(p: &FarFieldPattern, g: &crate::scattering::D4Element, sign: f64) -> Result<FarFieldPattern> {
    let n = p.len();
    let ginv = g.inverse();
    let det = g.det() as f64;
    let mut up = Vec::with_capacity(n);
    let mut us = Vec::with_capacity(n);
    for i in 0..n {
        let src = ginv
            .map_direction(i, n)
            .ok_or_else(|| Error::Precondition("observation nodes not invariant under symmetry".into()))?;
        up.push(p.up[src] * sign);
        us.push(p.us[src] * (sign * det));
    }
    Ok(FarFieldPattern { angles: p.angles.clone(), up, us })
}

/// Assemble the far-field operator from `2n` forward solves (fewer with symmetry).
pub fn assemble_f(
    grid: &ScattererGrid,
    params: &LameParameters,
    omega: f64,
    n: usize,
    opts: &AssemblyOptions,
) -> Result<FarFieldMatrix> {
    if n < 16 || n % 2 != 0 {
        return Err(Error::config(format!("direction count must be even and at least 16 (got {n})")));
    }
    let k = params.wavenumbers(omega)?;
    let orbits = if opts.use_symmetry {
        DirectionOrbits::new(n, &grid.symmetry_group())
    } else {
        DirectionOrbits::trivial(n)
    };
    let tasks: Vec<(WaveKind, usize)> = [WaveKind::P, WaveKind::S]
        .into_iter()
        .flat_map(|kind| orbits.representatives.iter().map(move |&r| (kind, r)))
        .collect();
    // Operators carry FFT scratch space, so every worker chunk builds its own.
    let chunks: Vec<Vec<(WaveKind, usize)>> = {
        let jobs = opts.jobs.max(1).min(tasks.len());
        let mut c = vec![Vec::new(); jobs];
        for (i, t) in tasks.iter().enumerate() {
            c[i % jobs].push(*t);
        }
        c
    };
    let evaluator = FarFieldEvaluator::new(grid, params, omega, n)?;
    let results = par_map(&chunks, opts.jobs, |chunk| -> Result<Vec<((WaveKind, usize), FarFieldPattern, usize)>> {
        let mut op = LsOperator::new(grid, params, omega)?;
        let mut out = Vec::new();
        for &(kind, r) in chunk {
            let dir = Direction::from_angle(2.0 * PI * r as f64 / n as f64);
            let uin = WaveField::from_plane_wave(grid, &PlaneWave::new(kind, dir, k));
            let sol = op.solve(&uin, &opts.solve).map_err(|e| {
                e.with_context(format!("solving for the {kind:?} wave along node {r} of {n} at omega = {omega}"))
            })?;
            out.push(((kind, r), evaluator.eval(&sol.field), sol.iterations));
        }
        Ok(out)
    });
    let mut patterns = std::collections::BTreeMap::new();
    let (mut solves, mut iterations) = (0, 0);
    for chunk in results {
        for (key, pat, its) in chunk? {
            solves += 1;
            iterations += its;
            patterns.insert((key.0 == WaveKind::S, key.1), pat);
        }
    }
    let mut raw = DMatrix::zeros(2 * n, 2 * n);
    for (b, kind) in [WaveKind::P, WaveKind::S].into_iter().enumerate() {
        for j in 0..n {
            let (r, g) = orbits.map[j];
            let base = &patterns[&(kind == WaveKind::S, r)];
            let sign = if kind == WaveKind::S { g.det() as f64 } else { 1.0 };
            let pat = if j == r { base.clone() } else { transform_pattern(base, &g, sign)? };
            for i in 0..n {
                raw[(i, b * n + j)] = pat.up[i];
                raw[(n + i, b * n + j)] = pat.us[i];
            }
        }
    }
    Ok(FarFieldMatrix {
        n,
        omega,
        scatterer: grid.geometry.id(),
        raw,
        weights: [herglotz_weight(k.k_p, omega, n), herglotz_weight(k.k_s, omega, n)],
        solves,
        iterations,
    })
}

/// Densities of a Herglotz wave on `n` equispaced nodes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HerglotzDensity {
    pub gp: Vec<C64>,
    pub gs: Vec<C64>,
}

impl HerglotzDensity {
    pub fn new(gp: Vec<C64>, gs: Vec<C64>) -> Result<Self> {
        if gp.len() != gs.len() || gp.is_empty() {
            return Err(Error::config("P and S densities need the same nonzero length"));
        }
        if gp.iter().chain(&gs).any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::config("densities must be finite"));
        }
        Ok(Self { gp, gs })
    }

    pub fn zeros(n: usize) -> Self {
        Self { gp: vec![C64::default(); n], gs: vec![C64::default(); n] }
    }

    pub fn n(&self) -> usize {
        self.gp.len()
    }

    pub fn scaled(&self, a: C64) -> Self {
        Self { gp: self.gp.iter().map(|z| z * a).collect(), gs: self.gs.iter().map(|z| z * a).collect() }
    }

    /// Stacked `[g_p; g_s]`, the vector the far-field matrix acts on.
    pub fn stacked(&self) -> Vec<C64> {
        self.gp.iter().chain(&self.gs).copied().collect()
    }

    /// Discrete L² norm with weights `2π/n`.
    pub fn l2_norm(&self) -> f64 {
        let w = 2.0 * PI / self.n() as f64;
        (w * self.gp.iter().chain(&self.gs).map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
    }
}

/// Trapezoidal Herglotz wave
/// `e^{−iπ/4} Σ (2π/n) {√(k_p/ω) e^{ik_p d·x} d g_p + √(k_s/ω) e^{ik_s d·x} d⊥ g_s}`.
pub fn herglotz_eval(g: &HerglotzDensity, params: &LameParameters, omega: f64, x: [f64; 2]) -> Result<[C64; 2]> {
    let k = params.wavenumbers(omega)?;
    let n = g.n();
    let (wp, ws) = (herglotz_weight(k.k_p, omega, n), herglotz_weight(k.k_s, omega, n));
    let mut out = [C64::default(); 2];
    for j in 0..n {
        let dir = Direction::from_angle(2.0 * PI * j as f64 / n as f64);
        if g.gp[j] != C64::default() {
            let v = PlaneWave::new(WaveKind::P, dir, k).value(x);
            out[0] += v[0] * g.gp[j] * wp;
            out[1] += v[1] * g.gp[j] * wp;
        }
        if g.gs[j] != C64::default() {
            let v = PlaneWave::new(WaveKind::S, dir, k).value(x);
            out[0] += v[0] * g.gs[j] * ws;
            out[1] += v[1] * g.gs[j] * ws;
        }
    }
    Ok(out)
}
