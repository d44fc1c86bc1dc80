use std::io::Write;

use serde::{Deserialize, Serialize};

use super::disk_ite::{disk_ites, DiskIte};
use super::farfield_matrix::AssemblyOptions;
use super::itp::{itp_scan, ItpDip, ItpOperator, ItpReport, ItpScanOptions};
use super::sweep::{
    golden_min, linspace, local_minima, sample_injectivity, sample_injectivity_band, sweep_frequencies, SweepReport,
    SweepSample,
};
use crate::elastic::LameParameters;
use crate::scattering::{Geometry, ScattererGrid, SolveOptions};
use crate::{Error, Result};

/// Settings of the rectangle-versus-disk experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HeadlineConfig {
    pub lambda: f64,
    pub mu: f64,
    pub rho0: f64,
    pub rect_width: f64,
    pub rect_height: f64,
    pub disk_radius: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    /// Cells across the scatterer (and finite-difference cells for the rectangle).
    pub cells: usize,
    pub directions: usize,
    pub samples: usize,
    pub solve_tol: f64,
    /// Disk collapse threshold on `σ_min/σ_median`.
    pub disk_threshold: f64,
    /// Rectangle floor on `σ_min/σ_median`.
    pub rectangle_floor: f64,
    /// Relative tolerance for dip locations under refinement.
    pub location_tol: f64,
    /// Allowed factor between floors under refinement.
    pub floor_factor: f64,
    /// Repeat the key measurements with `h/2` and `2N`.
    pub stability: bool,
    pub jobs: usize,
}

impl Default for HeadlineConfig {
    fn default() -> Self {
        Self {
            lambda: -0.9,
            mu: 1.0,
            rho0: 1.5,
            rect_width: 1.0,
            rect_height: 1.0,
            disk_radius: 0.5,
            omega_min: 27.5,
            omega_max: 30.5,
            cells: 48,
            directions: 32,
            samples: 40,
            solve_tol: 1e-8,
            disk_threshold: 1e-3,
            rectangle_floor: 1e-2,
            location_tol: 0.05,
            floor_factor: 2.0,
            stability: true,
            jobs: 1,
        }
    }
}

impl HeadlineConfig {
    pub fn params(&self) -> Result<LameParameters> {
        LameParameters::new(self.lambda, self.mu)
    }

    fn assembly(&self) -> AssemblyOptions {
        AssemblyOptions { solve: SolveOptions::with_tol(self.solve_tol), use_symmetry: true, jobs: self.jobs }
    }

    fn rectangle(&self, cells: usize) -> Result<ScattererGrid> {
        ScattererGrid::new(Geometry::Rectangle { width: self.rect_width, height: self.rect_height }, cells, self.rho0)
    }

    fn disk(&self, cells: usize) -> Result<ScattererGrid> {
        ScattererGrid::new(Geometry::Disk { radius: self.disk_radius }, cells, self.rho0)
    }
}

/// Refined minimum of the far-field ratio.
#[derive(Clone, Debug, Serialize)]
pub struct FarFieldDip {
    pub omega: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RectangleFindings {
    pub itp: ItpReport,
    pub itp_dip: Option<ItpDip>,
    pub sweep: SweepReport,
    /// Far-field sample at the deepest transmission dip.
    pub at_itp_dip: Option<SweepSample>,
    /// Smallest ratio over the sweep and the dip sample.
    pub floor: f64,
    pub floor_omega: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiskFindings {
    pub ites: Vec<DiskIte>,
    pub sweep: SweepReport,
    /// Deepest refined far-field dip lying near an eigenvalue.
    pub dip: Option<FarFieldDip>,
    pub matched_ite: Option<DiskIte>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityFindings {
    pub rect_itp_dip_fine: Option<ItpDip>,
    pub rect_itp_shift: f64,
    /// Frequencies of the reduced floor comparison.
    pub floor_omegas: Vec<f64>,
    pub rect_floor_base: f64,
    pub rect_floor_fine: f64,
    pub rect_floor_double_n: f64,
    pub disk_dip_fine: Option<FarFieldDip>,
    pub disk_dip_double_n: Option<FarFieldDip>,
    pub disk_shift_fine: f64,
    pub disk_shift_double_n: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    /// The disk far field collapses at a transmission eigenvalue.
    pub disk_collapse: bool,
    /// The rectangle has a transmission dip but no far-field collapse.
    pub rectangle_floor: bool,
    pub stable: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeadlineReport {
    pub config: HeadlineConfig,
    pub rectangle: RectangleFindings,
    pub disk: DiskFindings,
    pub stability: Option<StabilityFindings>,
    pub verdict: Verdict,
}

impl HeadlineReport {
    /// Side-by-side CSV over the sweep frequencies:
    /// `omega,rect_itp_relative,rect_ratio,disk_ratio`.
    pub fn write_juxtaposition_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["omega", "rect_itp_relative", "rect_ratio", "disk_ratio"])?;
        let itp = &self.rectangle.itp;
        for (i, s) in self.rectangle.sweep.samples.iter().enumerate() {
            wr.write_record(&[
                format!("{:.17e}", s.omega),
                format!("{:.17e}", itp.sigma_min[i] / itp.median),
                format!("{:.17e}", s.ratio),
                format!("{:.17e}", self.disk.sweep.samples[i].ratio),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// Coarse scan of `[lo, hi]` followed by golden-section refinement around its minimum.
fn refine_ratio_dip<F>(mut ratio: F, lo: f64, hi: f64, points: usize, tol: f64) -> Result<FarFieldDip>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let om = linspace(lo, hi, points);
    let vals = om.iter().map(|&o| ratio(o)).collect::<Result<Vec<_>>>()?;
    let i = (0..vals.len()).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).expect("points");
    let (a, b) = (om[i.saturating_sub(1)], om[(i + 1).min(om.len() - 1)]);
    let (omega, r) = golden_min(&mut ratio, a, b, tol * center, 40)?;
    Ok(if r < vals[i] { FarFieldDip { omega, ratio: r } } else { FarFieldDip { omega: om[i], ratio: vals[i] } })
}

/// Nearest local minimum of the transmission `σ_min` to `center` on a finer grid.
fn track_itp_dip(op: &ItpOperator, center: f64, window: f64, points: usize, tol: f64) -> Result<Option<ItpDip>> {
    let om = linspace(center * (1.0 - window), center * (1.0 + window), points);
    let vals = om.iter().map(|&o| op.sigma_min(o)).collect::<Result<Vec<_>>>()?;
    let med = super::median(&vals);
    let Some(&i) = local_minima(&vals).iter().min_by(|&&a, &&b| (om[a] - center).abs().total_cmp(&(om[b] - center).abs())) else {
        return Ok(None);
    };
    let (omega, s) = golden_min(|o| op.sigma_min(o), om[i - 1], om[i + 1], tol * center, 40)?;
    Ok(Some(ItpDip { omega, sigma_min: s, depth: s / med }))
}

/// Transmission dips alongside far-field injectivity for a rectangle and a disk.
pub fn headline_experiment(cfg: &HeadlineConfig) -> Result<HeadlineReport> {
    let p = cfg.params()?;
    if !(cfg.omega_min > 0.0 && cfg.omega_max > cfg.omega_min) {
        return Err(Error::config("omega_min must be positive and below omega_max"));
    }
    let window = (cfg.omega_min, cfg.omega_max);
    let asm = cfg.assembly();
    let n = cfg.directions;

    // Rectangle: finite-difference transmission scan, then far-field sweep.
    let itp_opts = ItpScanOptions { samples: cfg.samples, refine_tol: 1e-4, jobs: cfg.jobs };
    let itp = itp_scan(cfg.rect_width, cfg.rect_height, cfg.rho0, &p, window, cfg.cells, &itp_opts)?;
    let itp_dip = itp.deepest().cloned();
    let rect = cfg.rectangle(cfg.cells)?;
    let omegas = linspace(cfg.omega_min, cfg.omega_max, cfg.samples);
    let rsweep = sweep_frequencies(&rect, &p, &omegas, n, &asm)?;
    let at_itp_dip = match &itp_dip {
        Some(d) => Some(sample_injectivity(&rect, &p, d.omega, n, &asm)?),
        None => None,
    };
    let (mut floor, mut floor_omega) = (rsweep.min_ratio(), rsweep.worst().map_or(f64::NAN, |s| s.omega));
    if let Some(s) = &at_itp_dip {
        if s.ratio < floor {
            floor = s.ratio;
            floor_omega = s.omega;
        }
    }

    // Disk: exact eigenvalues, far-field sweep, refinement of dips near eigenvalues.
    let ites = disk_ites(&p, cfg.rho0, cfg.disk_radius, window, 2000)?;
    let disk = cfg.disk(cfg.cells)?;
    let dsweep = sweep_frequencies(&disk, &p, &omegas, n, &asm)?;
    let ratios: Vec<f64> = dsweep.samples.iter().map(|s| s.ratio).collect();
    let near_ite = |o: f64| ites.iter().any(|e| (e.omega - o).abs() <= 0.02 * e.omega);
    let mut cands: Vec<usize> = local_minima(&ratios).into_iter().filter(|&i| near_ite(omegas[i])).collect();
    cands.sort_by(|&a, &b| ratios[a].total_cmp(&ratios[b]));
    cands.truncate(6);
    let mut dip: Option<FarFieldDip> = None;
    for i in cands {
        let (o, r) = golden_min(
            |o| Ok(sample_injectivity(&disk, &p, o, n, &asm)?.ratio),
            omegas[i - 1],
            omegas[i + 1],
            1e-4 * omegas[i],
            40,
        )?;
        let (o, r) = if r < ratios[i] { (o, r) } else { (omegas[i], ratios[i]) };
        if dip.as_ref().is_none_or(|d| r < d.ratio) {
            dip = Some(FarFieldDip { omega: o, ratio: r });
        }
    }
    let matched_ite = dip.as_ref().and_then(|d| {
        ites.iter().min_by(|a, b| (a.omega - d.omega).abs().total_cmp(&(b.omega - d.omega).abs())).cloned()
    });

    let stability = if cfg.stability {
        let fine = 2 * cfg.cells;
        let op = ItpOperator::new(cfg.rect_width, cfg.rect_height, cfg.rho0, p, fine)?;
        let rect_itp_dip_fine = match &itp_dip {
            Some(d) => track_itp_dip(&op, d.omega, 0.02, 9, 1e-4)?,
            None => None,
        };
        let rect_itp_shift = match (&itp_dip, &rect_itp_dip_fine) {
            (Some(a), Some(b)) => (b.omega - a.omega).abs() / a.omega,
            _ => f64::INFINITY,
        };
        // Every fourth sweep frequency plus the transmission dip.
        let mut floor_omegas: Vec<f64> = omegas.iter().step_by(4).copied().collect();
        let mut base: Vec<f64> = rsweep.samples.iter().step_by(4).map(|s| s.ratio).collect();
        if let Some(s) = &at_itp_dip {
            floor_omegas.push(s.omega);
            base.push(s.ratio);
        }
        let rect_fine = cfg.rectangle(fine)?;
        let fine_r = sweep_frequencies(&rect_fine, &p, &floor_omegas, n, &asm)?;
        let inner = AssemblyOptions { jobs: 1, ..asm };
        let dbl = super::par_map(&floor_omegas, cfg.jobs, |&o| sample_injectivity_band(&rect, &p, o, 2 * n, n, &inner))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let rect_floor_base = base.iter().copied().fold(f64::INFINITY, f64::min);
        let rect_floor_fine = fine_r.min_ratio();
        let rect_floor_double_n = dbl.iter().map(|s| s.ratio).fold(f64::INFINITY, f64::min);

        // Refinement moves the discrete dip towards the exact eigenvalue, so the
        // search bracket spans both with a small margin.
        let (disk_dip_fine, disk_dip_double_n) = match (&dip, &matched_ite) {
            (Some(d), Some(e)) => {
                let lo = d.omega.min(e.omega) * 0.9975;
                let hi = d.omega.max(e.omega) * 1.0025;
                let disk_fine = cfg.disk(fine)?;
                let a = refine_ratio_dip(|o| Ok(sample_injectivity(&disk_fine, &p, o, n, &asm)?.ratio), lo, hi, 9, 1e-4)?;
                let b = refine_ratio_dip(
                    |o| Ok(sample_injectivity_band(&disk, &p, o, 2 * n, n, &asm)?.ratio),
                    lo,
                    hi,
                    9,
                    1e-4,
                )?;
                (Some(a), Some(b))
            }
            _ => (None, None),
        };
        let shift = |x: &Option<FarFieldDip>| match (&dip, x) {
            (Some(a), Some(b)) => (b.omega - a.omega).abs() / a.omega,
            _ => f64::INFINITY,
        };
        Some(StabilityFindings {
            rect_itp_shift,
            rect_itp_dip_fine,
            floor_omegas,
            rect_floor_base,
            rect_floor_fine,
            rect_floor_double_n,
            disk_shift_fine: shift(&disk_dip_fine),
            disk_shift_double_n: shift(&disk_dip_double_n),
            disk_dip_fine,
            disk_dip_double_n,
        })
    } else {
        None
    };

    let disk_collapse = match (&dip, &matched_ite) {
        (Some(d), Some(e)) => d.ratio <= cfg.disk_threshold && (d.omega - e.omega).abs() <= cfg.location_tol * e.omega,
        _ => false,
    };
    let rectangle_floor = itp_dip.is_some() && floor >= cfg.rectangle_floor;
    let stable = stability.as_ref().map(|s| {
        let within = |a: f64, b: f64| a <= cfg.floor_factor * b && b <= cfg.floor_factor * a;
        let disk_ok = |x: &Option<FarFieldDip>| {
            x.as_ref().zip(dip.as_ref()).is_some_and(|(f, d)| f.ratio <= cfg.floor_factor * d.ratio)
        };
        s.rect_itp_shift <= cfg.location_tol
            && within(s.rect_floor_fine, s.rect_floor_base)
            && within(s.rect_floor_double_n, s.rect_floor_base)
            && s.disk_shift_fine <= cfg.location_tol
            && s.disk_shift_double_n <= cfg.location_tol
            && disk_ok(&s.disk_dip_fine)
            && disk_ok(&s.disk_dip_double_n)
    });
    Ok(HeadlineReport {
        config: cfg.clone(),
        rectangle: RectangleFindings { itp, itp_dip, sweep: rsweep, at_itp_dip, floor, floor_omega },
        disk: DiskFindings { ites, sweep: dsweep, dip, matched_ite },
        stability,
        verdict: Verdict { disk_collapse, rectangle_floor, stable },
    })
}
