use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::{RunConfig, Task};
use super::manifest::{config_hash, unix_now, Check, RunDir, RunManifest};
use crate::analysis::{
    headline_experiment, injectivity_sweep, itp_scan, AssemblyOptions, HeadlineConfig, ItpScanOptions,
};
use crate::corner::{certify, compare_printed_systems, probe_order, InductionCertificate};
use crate::elastic::{Direction, LameParameters, PlaneWave};
use crate::lame::{algebra_suite, random_lame};
use crate::scattering::{far_field, Geometry, LsOperator, ScattererGrid, SolveOptions, WaveField};
use crate::{Error, Result};

/// Environment variable naming the directory under which runs are written.
pub const OUTPUT_ROOT_ENV: &str = "ELASTIC_CORNERS_OUTPUT";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_DOMAIN: i32 = 5;

/// Process exit code for a library error. Configuration problems and grids
/// too coarse for the requested frequency both count as configuration errors.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Resolution(_) => EXIT_CONFIG,
        Error::Solver { .. } => EXIT_SOLVER,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => EXIT_IO,
        Error::Domain(_) | Error::Precondition(_) => EXIT_DOMAIN,
    }
}

/// Output root from [`OUTPUT_ROOT_ENV`], defaulting to `./runs`.
pub fn output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ROOT_ENV).map_or_else(|| PathBuf::from("runs"), PathBuf::from)
}

/// What a run produced.
#[derive(Debug)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub manifest: RunManifest,
    pub exit_code: i32,
}

/// Runs a validated configuration under `root`, writing its artifacts and,
/// last, the manifest. `source` is the configuration text, echoed into the
/// manifest when present. Only a failure to write the manifest itself is
/// returned as an error.
pub fn run(cfg: &RunConfig, root: &Path, source: Option<&str>) -> Result<RunOutcome> {
    let started = unix_now();
    let mut dir = RunDir::create(root.join(&cfg.output))?;
    let mut checks = Vec::new();
    let result = dispatch(cfg, &mut dir, &mut checks);
    let (error, exit) = match &result {
        Ok(()) if checks.iter().all(|c| c.pass) => (None, EXIT_PASS),
        Ok(()) => (None, EXIT_PROPERTY),
        Err(e) => (Some(e.to_string()), exit_code(e)),
    };
    let manifest = RunManifest {
        mode: cfg.mode().name().to_string(),
        config_hash: config_hash(cfg),
        started_unix: started,
        finished_unix: unix_now(),
        crate_version: env!("CARGO_PKG_VERSION").to_string(),
        modules: modules(&cfg.task).iter().map(|m| m.to_string()).collect(),
        input_text: source.map(str::to_string),
        input: serde_json::to_value(cfg)?,
        outputs: dir.outputs().to_vec(),
        checks,
        pass: exit == EXIT_PASS,
        partial: error.is_some(),
        error,
        exit_code: exit,
    };
    let path = dir.path().to_path_buf();
    dir.finish(&manifest)?;
    Ok(RunOutcome { dir: path, manifest, exit_code: exit })
}

fn modules(task: &Task) -> &'static [&'static str] {
    match task {
        Task::VerifyAlgebra { .. } => &["lame", "exact", "io"],
        Task::VerifyInduction { .. } => &["corner", "lame", "exact", "io"],
        Task::Solve { .. } => &["elastic", "special", "scattering", "io"],
        Task::FarfieldSweep { .. } => &["elastic", "special", "scattering", "analysis", "io"],
        Task::ItpScan { .. } => &["elastic", "analysis", "io"],
        Task::Headline(_) => &["elastic", "special", "scattering", "analysis", "io"],
    }
}

fn dispatch(cfg: &RunConfig, dir: &mut RunDir, checks: &mut Vec<Check>) -> Result<()> {
    match &cfg.task {
        Task::VerifyAlgebra { lambda, mu, rank_one, points } => {
            verify_algebra(cfg.seed, &rat(lambda)?, &rat(mu)?, *rank_one, *points, dir, checks)
        }
        Task::VerifyInduction { max_order, samples, pair } => {
            let pair = match pair {
                Some((l, m)) => Some((rat(l)?, rat(m)?)),
                None => None,
            };
            verify_induction(cfg.seed, *max_order, *samples, pair, dir, checks)
        }
        Task::Solve { params, geometry, rho0, cells, omega, incident, directions, tol } => {
            let grid = ScattererGrid::new(geometry.clone(), *cells, *rho0)?;
            let wave = PlaneWave::new(incident.kind, Direction::from_angle(incident.angle), params.wavenumbers(*omega)?);
            solve(cfg, &grid, params, *omega, &wave, *directions, *tol, dir, checks)
        }
        Task::FarfieldSweep { params, geometry, rho0, cells, omega_range, samples, directions, tol, floor, collapse } => {
            let grid = ScattererGrid::new(geometry.clone(), *cells, *rho0)?;
            let opts = AssemblyOptions { solve: SolveOptions::with_tol(*tol), use_symmetry: true, jobs: cfg.jobs };
            let rep = injectivity_sweep(&grid, params, *omega_range, *directions, *samples, &opts)?;
            dir.write_with("sweep.csv", |b| rep.write_csv(b))?;
            dir.write_json("sweep.json", &rep)?;
            let min = rep.min_ratio();
            let at = rep.worst().map_or(f64::NAN, |s| s.omega);
            let sane = rep.samples.iter().all(|s| s.sigma_min >= 0.0 && s.sigma_min.is_finite() && s.ratio.is_finite());
            checks.push(Check::new("singular values finite and nonnegative", sane, ""));
            if let Some(f) = floor {
                checks.push(Check::new("ratio floor", min >= *f, format!("min σ_min/σ_median = {min:.3e} at ω = {at:.6} (floor {f:.1e})")));
            }
            if let Some(c) = collapse {
                checks.push(Check::new("ratio collapse", min <= *c, format!("min σ_min/σ_median = {min:.3e} at ω = {at:.6} (threshold {c:.1e})")));
            }
            Ok(())
        }
        Task::ItpScan { params, width, height, rho0, cells, omega_range, samples, max_depth } => {
            let opts = ItpScanOptions { samples: *samples, jobs: cfg.jobs, ..ItpScanOptions::default() };
            let rep = itp_scan(*width, *height, *rho0, params, *omega_range, *cells, &opts)?;
            dir.write_with("itp.csv", |b| rep.write_csv(b))?;
            dir.write_json("itp.json", &rep)?;
            if let Some(d) = max_depth {
                let deepest = rep.deepest().map(|x| (x.omega, x.depth));
                let detail = match deepest {
                    Some((o, dep)) => format!("deepest dip {dep:.3e} at ω = {o:.6} (bound {d:.1e})"),
                    None => "no interior local minimum in the window".to_string(),
                };
                checks.push(Check::new("transmission dip depth", deepest.is_some_and(|x| x.1 <= *d), detail));
            }
            Ok(())
        }
        Task::Headline(h) => headline(&HeadlineConfig { jobs: cfg.jobs.max(h.jobs), ..h.clone() }, dir, checks),
    }
}

fn rat(s: &str) -> Result<BigRational> {
    BigRational::from_str(s).map_err(|_| Error::config(format!("cannot read {s:?} as a rational number")))
}

fn verify_algebra(
    seed: u64,
    lambda: &BigRational,
    mu: &BigRational,
    rank_one: usize,
    points: usize,
    dir: &mut RunDir,
    checks: &mut Vec<Check>,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suite = algebra_suite(&mut rng, lambda, mu, rank_one, points)?;
    dir.write_json("algebra.json", &suite)?;
    let count = |name: &str, fails: usize, of: usize| Check::new(name, fails == 0, format!("{fails} failures in {of}"));
    checks.push(count("rank-one determinant identity", suite.rank_one_failures, suite.rank_one_instances));
    checks.push(count("Lamé symbol identities", suite.symbol_failures, suite.symbol_points));
    checks.push(count("squared-symbol factorisations", suite.factorisation_failures, suite.symbol_points));
    checks.push(Check::new(
        "B-matrix identities",
        suite.b_matrix.all() && suite.b_matrix_failures == 0,
        format!("fixed pair a = {}, b = {}; {} failures at random pairs", suite.b_matrix.a, suite.b_matrix.b, suite.b_matrix_failures),
    ));
    Ok(())
}

/// Rank of the stacked system at one order for the excluded case `a = b`.
#[derive(Serialize)]
struct ProbeRow {
    order: usize,
    unknowns: usize,
    rank: usize,
    full_rank: bool,
}

#[derive(Serialize)]
struct InductionLog<'a> {
    seed: u64,
    max_order: usize,
    certificates: &'a [InductionCertificate],
    /// Informational: `a = b = 1`, which no admissible pair produces.
    equal_ab_probe: Vec<ProbeRow>,
}

fn verify_induction(
    seed: u64,
    max_order: usize,
    samples: usize,
    pair: Option<(BigRational, BigRational)>,
    dir: &mut RunDir,
    checks: &mut Vec<Check>,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<_> = pair.into_iter().collect();
    pairs.extend((0..samples).map(|_| random_lame(&mut rng)));
    let certs = pairs.iter().map(|(l, m)| certify(l, m, max_order)).collect::<Result<Vec<_>>>()?;

    let one = BigRational::from_integer(1.into());
    let equal_ab_probe = (0..=max_order.min(8))
        .map(|n| {
            let r = probe_order(n, &one, &one);
            ProbeRow { order: n, unknowns: r.unknowns, rank: r.rank, full_rank: r.full_rank }
        })
        .collect();

    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["pair", "lambda", "mu", "a", "b", "order", "unknowns", "boundary_rows", "pde_rows", "rank", "full_rank", "pivot_trace_sha256"])?;
    for (i, c) in certs.iter().enumerate() {
        for o in &c.orders {
            csv.write_record(&[
                i.to_string(),
                c.lambda.clone(),
                c.mu.clone(),
                c.a.clone(),
                c.b.clone(),
                o.order.to_string(),
                o.unknowns.to_string(),
                o.boundary_rows.to_string(),
                o.pde_rows.to_string(),
                o.rank.to_string(),
                o.full_rank.to_string(),
                o.pivot_trace_sha256.clone(),
            ])?;
        }
    }
    let csv = csv.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    dir.write("induction.csv", &csv)?;
    dir.write_json("induction.json", &InductionLog { seed, max_order, certificates: &certs, equal_ab_probe })?;

    let failed = certs.iter().filter(|c| !c.pass).count();
    checks.push(Check::new(
        "full column rank at every order",
        failed == 0,
        format!("{failed} of {} pairs failed through order {max_order}", certs.len()),
    ));
    if max_order >= 4 {
        let diffs: Vec<_> = (4..=max_order.min(6)).map(compare_printed_systems).collect();
        dir.write_json("printed_diff.json", &diffs)?;
        let mismatches: usize = diffs.iter().map(|d| d.mismatches).sum();
        checks.push(Check::new(
            "derived systems certify the printed orders",
            diffs.iter().all(|d| d.derived_certifies),
            format!("{mismatches} entrywise differences against the printed systems (reported, not asserted)"),
        ));
    }
    Ok(())
}

/// Binary field cache: magic, config hash, `nx`, `ny`, then `u₁, u₂` per cell
/// as little-endian `f64` real and imaginary parts.
const CACHE_MAGIC: &[u8; 8] = b"ECFIELD1";

pub fn encode_field(hash: &str, u: &WaveField) -> Vec<u8> {
    let mut b = Vec::with_capacity(8 + 64 + 16 + 32 * u.values.len());
    b.extend_from_slice(CACHE_MAGIC);
    b.extend_from_slice(hash.as_bytes());
    b.extend_from_slice(&(u.nx as u64).to_le_bytes());
    b.extend_from_slice(&(u.ny as u64).to_le_bytes());
    for v in &u.values {
        for z in v {
            b.extend_from_slice(&z.re.to_le_bytes());
            b.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    b
}

/// Inverse of [`encode_field`]; `None` when the header or size does not match.
pub fn decode_field(hash: &str, b: &[u8]) -> Option<WaveField> {
    let head = 8 + hash.len() + 16;
    if b.len() < head || &b[..8] != CACHE_MAGIC || &b[8..8 + hash.len()] != hash.as_bytes() {
        return None;
    }
    let word = |at: usize| u64::from_le_bytes(b[at..at + 8].try_into().expect("eight bytes"));
    let (nx, ny) = (word(8 + hash.len()) as usize, word(16 + hash.len()) as usize);
    if b.len() != head + 32 * nx * ny {
        return None;
    }
    let f = |k: usize| f64::from_le_bytes(b[head + 8 * k..head + 8 * k + 8].try_into().expect("eight bytes"));
    let values = (0..nx * ny)
        .map(|c| {
            let k = 4 * c;
            [crate::C64::new(f(k), f(k + 1)), crate::C64::new(f(k + 2), f(k + 3))]
        })
        .collect();
    Some(WaveField { nx, ny, values })
}

#[derive(Serialize)]
struct SolveSummary<'a> {
    geometry: &'a Geometry,
    cells: [usize; 2],
    h: f64,
    omega: f64,
    iterations: usize,
    residual: f64,
    history: &'a [f64],
    from_cache: bool,
    farfield_norm: f64,
}

#[allow(clippy::too_many_arguments)]
fn solve(
    cfg: &RunConfig,
    grid: &ScattererGrid,
    params: &LameParameters,
    omega: f64,
    wave: &PlaneWave,
    directions: usize,
    tol: f64,
    dir: &mut RunDir,
    checks: &mut Vec<Check>,
) -> Result<()> {
    let hash = config_hash(cfg);
    let mut op = LsOperator::new(grid, params, omega)?;
    let uin = WaveField::from_plane_wave(grid, wave);
    let cache = dir.path().join("field.bin");
    let cached = std::fs::read(&cache).ok().and_then(|b| decode_field(&hash, &b).map(|u| (u, b)));
    let (u, iterations, history) = match cached {
        Some((u, bytes)) if u.nx == grid.nx && u.ny == grid.ny => {
            dir.record("field.bin", &bytes);
            (u, 0, Vec::new())
        }
        _ => {
            let s = op.solve(&uin, &SolveOptions::with_tol(tol))?;
            dir.write("field.bin", &encode_field(&hash, &s.field))?;
            (s.field, s.iterations, s.history)
        }
    };
    let from_cache = history.is_empty();
    let residual = op.residual(&u, &uin);
    let pattern = far_field(&u, grid, params, omega, directions)?;

    let mut wr = csv::Writer::from_writer(Vec::new());
    wr.write_record(["ix", "iy", "x", "y", "fraction", "u1_re", "u1_im", "u2_re", "u2_im"])?;
    for (c, v) in u.values.iter().enumerate() {
        let [x, y] = grid.center_of(c);
        wr.write_record(&[
            (c % grid.nx).to_string(),
            (c / grid.nx).to_string(),
            format!("{x:.17e}"),
            format!("{y:.17e}"),
            format!("{:.17e}", grid.fractions[c]),
            format!("{:.17e}", v[0].re),
            format!("{:.17e}", v[0].im),
            format!("{:.17e}", v[1].re),
            format!("{:.17e}", v[1].im),
        ])?;
    }
    let bytes = wr.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    dir.write("field.csv", &bytes)?;
    dir.write_with("farfield.csv", |b| pattern.write_csv(b))?;
    dir.write_json(
        "solve.json",
        &SolveSummary {
            geometry: &grid.geometry,
            cells: [grid.nx, grid.ny],
            h: grid.h,
            omega,
            iterations,
            residual,
            history: &history,
            from_cache,
            farfield_norm: pattern.norm(),
        },
    )?;
    checks.push(Check::new("field finite", u.is_finite(), ""));
    // A cached field is rechecked against the operator; allow rounding on top of tol.
    checks.push(Check::new("discrete residual within tolerance", residual <= tol * 1.01, format!("{residual:.3e} (tol {tol:.1e})")));
    Ok(())
}

fn headline(h: &HeadlineConfig, dir: &mut RunDir, checks: &mut Vec<Check>) -> Result<()> {
    let rep = headline_experiment(h)?;
    dir.write_with("juxtaposition.csv", |b| rep.write_juxtaposition_csv(b))?;
    dir.write_with("rectangle_itp.csv", |b| rep.rectangle.itp.write_csv(b))?;
    dir.write_with("rectangle_sweep.csv", |b| rep.rectangle.sweep.write_csv(b))?;
    dir.write_with("disk_sweep.csv", |b| rep.disk.sweep.write_csv(b))?;
    dir.write_json("headline.json", &rep)?;
    let disk = match (&rep.disk.dip, &rep.disk.matched_ite) {
        (Some(d), Some(e)) => format!("refined dip {:.3e} at ω = {:.5}, eigenvalue {:.5} (mode {})", d.ratio, d.omega, e.omega, e.mode),
        _ => "no far-field dip near a disk eigenvalue".into(),
    };
    checks.push(Check::new("disk collapses at a transmission eigenvalue", rep.verdict.disk_collapse, disk));
    let rect = format!(
        "transmission dip {}; far-field floor {:.3e} at ω = {:.5} (floor {:.1e})",
        rep.rectangle.itp_dip.as_ref().map_or("none".into(), |d| format!("{:.3e} at ω = {:.5}", d.depth, d.omega)),
        rep.rectangle.floor,
        rep.rectangle.floor_omega,
        h.rectangle_floor
    );
    checks.push(Check::new("rectangle keeps a far-field floor at its transmission dip", rep.verdict.rectangle_floor, rect));
    if let (Some(stable), Some(s)) = (rep.verdict.stable, &rep.stability) {
        checks.push(Check::new(
            "stable under h/2 and 2N",
            stable,
            format!(
                "rectangle dip shift {:.2}%, floors {:.3e}/{:.3e}/{:.3e}; disk shifts {:.2}%/{:.2}%",
                100.0 * s.rect_itp_shift,
                s.rect_floor_base,
                s.rect_floor_fine,
                s.rect_floor_double_n,
                100.0 * s.disk_shift_fine,
                100.0 * s.disk_shift_double_n
            ),
        ));
    }
    Ok(())
}
