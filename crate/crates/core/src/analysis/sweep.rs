use std::io::Write;

use serde::Serialize;

use super::farfield_matrix::{assemble_f, median, AssemblyOptions};
use super::parallel::par_map;
use crate::elastic::LameParameters;
use crate::scattering::ScattererGrid;
use crate::{Error, Result};

/// Singular-value summary of the far-field operator at one frequency.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SweepSample {
    pub omega: f64,
    pub sigma_min: f64,
    pub sigma_median: f64,
    pub sigma_max: f64,
    pub ratio: f64,
    pub solves: usize,
    pub iterations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub scatterer: String,
    pub rho0: f64,
    pub cells: [usize; 2],
    pub n: usize,
    /// Sorted by omega.
    pub samples: Vec<SweepSample>,
}

impl SweepReport {
    /// Sample with the smallest `σ_min / σ_median`.
    pub fn worst(&self) -> Option<&SweepSample> {
        self.samples.iter().min_by(|a, b| a.ratio.total_cmp(&b.ratio))
    }

    pub fn min_ratio(&self) -> f64 {
        self.worst().map_or(f64::NAN, |s| s.ratio)
    }

    /// CSV with columns `omega,sigma_min,sigma_median,sigma_max,ratio,solves,iterations`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["omega", "sigma_min", "sigma_median", "sigma_max", "ratio", "solves", "iterations"])?;
        for s in &self.samples {
            wr.write_record(&[
                format!("{:.17e}", s.omega),
                format!("{:.17e}", s.sigma_min),
                format!("{:.17e}", s.sigma_median),
                format!("{:.17e}", s.sigma_max),
                format!("{:.17e}", s.ratio),
                s.solves.to_string(),
                s.iterations.to_string(),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// `σ_min`, median and `σ_max` of the far-field operator at one frequency.
pub fn sample_injectivity(
    grid: &ScattererGrid,
    params: &LameParameters,
    omega: f64,
    n: usize,
    opts: &AssemblyOptions,
) -> Result<SweepSample> {
    let f = assemble_f(grid, params, omega, n, opts)?;
    let s = f.singular_values();
    let sigma_min = *s.last().expect("nonempty");
    let sigma_median = median(&s);
    Ok(SweepSample {
        omega,
        sigma_min,
        sigma_median,
        sigma_max: s[0],
        ratio: sigma_min / sigma_median,
        solves: f.solves,
        iterations: f.iterations,
    })
}

/// Like [`sample_injectivity`], but singular values are taken of the operator
/// restricted to the angular band `−m/2..m/2` (see [`super::FarFieldMatrix::band_restricted`]).
pub fn sample_injectivity_band(
    grid: &ScattererGrid,
    params: &LameParameters,
    omega: f64,
    n: usize,
    band: usize,
    opts: &AssemblyOptions,
) -> Result<SweepSample> {
    let f = assemble_f(grid, params, omega, n, opts)?;
    let s = super::farfield_matrix::sorted_singular_values(f.band_restricted(band));
    let sigma_min = *s.last().expect("nonempty");
    let sigma_median = median(&s);
    Ok(SweepSample {
        omega,
        sigma_min,
        sigma_median,
        sigma_max: s[0],
        ratio: sigma_min / sigma_median,
        solves: f.solves,
        iterations: f.iterations,
    })
}

/// Equispaced frequencies including both end points.
pub fn linspace(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    if samples == 1 {
        return vec![lo];
    }
    (0..samples).map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64).collect()
}

/// Far-field singular values at the given frequencies, in parallel over frequencies.
pub fn sweep_frequencies(
    grid: &ScattererGrid,
    params: &LameParameters,
    omegas: &[f64],
    n: usize,
    opts: &AssemblyOptions,
) -> Result<SweepReport> {
    let inner = AssemblyOptions { jobs: 1, ..*opts };
    let results = par_map(omegas, opts.jobs, |&om| {
        sample_injectivity(grid, params, om, n, &inner).map_err(|e| annotate(e, om))
    });
    let mut samples = results.into_iter().collect::<Result<Vec<_>>>()?;
    samples.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(SweepReport { scatterer: grid.geometry.id(), rho0: grid.rho0, cells: [grid.nx, grid.ny], n, samples })
}

fn annotate(e: Error, omega: f64) -> Error {
    match e {
        Error::Solver { ref context, .. } if !context.is_empty() => e,
        Error::Solver { .. } => e.with_context(format!("sweep sample omega = {omega}")),
        other => other,
    }
}

/// Far-field singular values over `samples ≥ 20` equispaced frequencies.
pub fn injectivity_sweep(
    grid: &ScattererGrid,
    params: &LameParameters,
    omega_range: (f64, f64),
    n: usize,
    samples: usize,
    opts: &AssemblyOptions,
) -> Result<SweepReport> {
    let mut errs = Vec::new();
    if samples < 20 {
        errs.push(format!("a sweep needs at least 20 samples (got {samples})"));
    }
    if !(omega_range.0 > 0.0 && omega_range.1 > omega_range.0) {
        errs.push(format!("omega range must satisfy 0 < lo < hi (got {:?})", omega_range));
    }
    if !errs.is_empty() {
        return Err(Error::Config(errs));
    }
    sweep_frequencies(grid, params, &linspace(omega_range.0, omega_range.1, samples), n, opts)
}

/// Golden-section search for a local minimum of `f` on `[a, b]`.
/// Returns the best abscissa seen and its value.
pub fn golden_min<F>(mut f: F, mut a: f64, mut b: f64, tol: f64, max_evals: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut evals = 2;
    let mut best = if fc < fd { (c, fc) } else { (d, fd) };
    while (b - a) > tol && evals < max_evals {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
            if fd < best.1 {
                best = (d, fd);
            }
        }
        evals += 1;
    }
    Ok(best)
}

/// Indices of strict interior local minima of a sampled sequence.
pub fn local_minima(v: &[f64]) -> Vec<usize> {
    (1..v.len().saturating_sub(1)).filter(|&i| v[i] < v[i - 1] && v[i] < v[i + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, fx) = golden_min(|x| Ok((x - 0.3) * (x - 0.3) + 1.0), 0.0, 1.0, 1e-8, 100).unwrap();
        assert!((x - 0.3).abs() < 1e-7 && (fx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn minima_and_median() {
        assert_eq!(local_minima(&[3.0, 1.0, 2.0, 0.5, 0.7, 0.1]), vec![1, 3]);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
        assert_eq!(median(&[4.0, 1.0, 3.0]), 3.0);
    }

    #[test]
    fn too_few_samples_rejected() {
        let g = ScattererGrid::new(crate::scattering::Geometry::Disk { radius: 0.5 }, 16, 2.0).unwrap();
        let p = LameParameters::new(1.0, 1.0).unwrap();
        let e = injectivity_sweep(&g, &p, (1.0, 2.0), 16, 10, &AssemblyOptions::default()).unwrap_err();
        assert!(matches!(e, Error::Config(_)));
    }
}
