use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::analysis::HeadlineConfig;
use crate::elastic::{LameParameters, WaveKind};
use crate::scattering::Geometry;
use crate::{Error, Result};

/// Pipeline selected by a configuration document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    VerifyAlgebra,
    VerifyInduction,
    Solve,
    FarfieldSweep,
    ItpScan,
    Headline,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::VerifyAlgebra => "verify-algebra",
            Mode::VerifyInduction => "verify-induction",
            Mode::Solve => "solve",
            Mode::FarfieldSweep => "farfield-sweep",
            Mode::ItpScan => "itp-scan",
            Mode::Headline => "headline",
        }
    }
}

/// A number written either as a TOML float or integer, or as an exact
/// string such as `"-9/10"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Scalar {
    /// Exact value. Floats convert to the rational they represent in binary.
    pub fn to_rational(&self) -> std::result::Result<BigRational, String> {
        match self {
            Scalar::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Scalar::Float(x) => BigRational::from_float(*x).ok_or_else(|| format!("{x} is not finite")),
            Scalar::Text(s) => {
                BigRational::from_str(s.trim()).map_err(|_| format!("cannot read {s:?} as a rational number"))
            }
        }
    }

    pub fn to_f64(&self) -> std::result::Result<f64, String> {
        match self {
            Scalar::Int(n) => Ok(*n as f64),
            Scalar::Float(x) => Ok(*x),
            Scalar::Text(_) => self
                .to_rational()?
                .to_f64()
                .ok_or_else(|| "value out of floating-point range".to_string()),
        }
    }
}

/// Incident plane wave of a single solve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidentSpec {
    pub kind: WaveKind,
    /// Propagation direction angle in radians.
    #[serde(default)]
    pub angle: f64,
}

impl Default for IncidentSpec {
    fn default() -> Self {
        Self { kind: WaveKind::P, angle: 0.0 }
    }
}

/// The document exactly as written, before validation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub mode: Option<Mode>,
    pub lambda: Option<Scalar>,
    pub mu: Option<Scalar>,
    pub rho0: Option<f64>,
    pub geometry: Option<Geometry>,
    pub omega: Option<f64>,
    pub omega_range: Option<[f64; 2]>,
    pub samples: Option<usize>,
    pub cells: Option<usize>,
    pub directions: Option<usize>,
    pub tol: Option<f64>,
    pub incident: Option<IncidentSpec>,
    pub max_order: Option<usize>,
    pub seed: Option<u64>,
    pub output: Option<String>,
    pub jobs: Option<usize>,
    /// Lower bound asserted on `σ_min/σ_median` over a sweep.
    pub floor: Option<f64>,
    /// Upper bound asserted on the smallest `σ_min/σ_median` of a sweep.
    pub collapse: Option<f64>,
    /// Upper bound asserted on the depth of the deepest transmission dip.
    pub max_depth: Option<f64>,
    pub headline: Option<HeadlineConfig>,
}

/// Work described by a validated configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Task {
    VerifyAlgebra {
        lambda: String,
        mu: String,
        /// Random rank-one instances and random symbol points.
        rank_one: usize,
        points: usize,
    },
    VerifyInduction {
        max_order: usize,
        samples: usize,
        /// Extra pair certified alongside the random ones.
        pair: Option<(String, String)>,
    },
    Solve {
        params: LameParameters,
        geometry: Geometry,
        rho0: f64,
        cells: usize,
        omega: f64,
        incident: IncidentSpec,
        directions: usize,
        tol: f64,
    },
    FarfieldSweep {
        params: LameParameters,
        geometry: Geometry,
        rho0: f64,
        cells: usize,
        omega_range: (f64, f64),
        samples: usize,
        directions: usize,
        tol: f64,
        floor: Option<f64>,
        collapse: Option<f64>,
    },
    ItpScan {
        params: LameParameters,
        width: f64,
        height: f64,
        rho0: f64,
        cells: usize,
        omega_range: (f64, f64),
        samples: usize,
        max_depth: Option<f64>,
    },
    Headline(HeadlineConfig),
}

impl Task {
    pub fn mode(&self) -> Mode {
        match self {
            Task::VerifyAlgebra { .. } => Mode::VerifyAlgebra,
            Task::VerifyInduction { .. } => Mode::VerifyInduction,
            Task::Solve { .. } => Mode::Solve,
            Task::FarfieldSweep { .. } => Mode::FarfieldSweep,
            Task::ItpScan { .. } => Mode::ItpScan,
            Task::Headline(_) => Mode::Headline,
        }
    }
}

/// Validated run description.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub task: Task,
    pub seed: u64,
    /// Run directory relative to the output root.
    pub output: String,
    pub jobs: usize,
}

impl RunConfig {
    pub fn mode(&self) -> Mode {
        self.task.mode()
    }

    /// Default run for a task.
    pub fn new(task: Task) -> Self {
        let output = task.mode().name().to_string();
        Self { task, seed: 0, output, jobs: 1 }
    }
}

/// Collects every violation instead of stopping at the first.
struct Checker {
    mode: Mode,
    errs: Vec<String>,
}

impl Checker {
    fn required<T: Clone>(&mut self, name: &str, v: &Option<T>) -> Option<T> {
        if v.is_none() {
            self.errs.push(format!("`{name}` is required in {} mode", self.mode.name()));
        }
        v.clone()
    }

    fn unused<T>(&mut self, name: &str, v: &Option<T>) {
        if v.is_some() {
            self.errs.push(format!("`{name}` is not used in {} mode", self.mode.name()));
        }
    }

    fn positive(&mut self, name: &str, v: f64) {
        if !(v > 0.0 && v.is_finite()) {
            self.errs.push(format!("{name} must be positive (got {v})"));
        }
    }

    fn at_least(&mut self, name: &str, v: usize, min: usize) {
        if v < min {
            self.errs.push(format!("{name} must be at least {min} (got {v})"));
        }
    }

    fn rho0(&mut self, v: f64) {
        if !(v > 0.0 && v.is_finite()) {
            self.errs.push(format!("rho0 must be positive (got {v})"));
        } else if v == 1.0 {
            self.errs.push("rho0 must be a constant different from one".into());
        }
    }

    fn range(&mut self, v: [f64; 2]) -> (f64, f64) {
        if !(v[0] > 0.0 && v[1] > v[0] && v[1].is_finite()) {
            self.errs.push(format!("omega_range must satisfy 0 < lo < hi (got [{}, {}])", v[0], v[1]));
        }
        (v[0], v[1])
    }

    fn params(&mut self, lambda: &Option<Scalar>, mu: &Option<Scalar>) -> Option<LameParameters> {
        let l = self.required("lambda", lambda).and_then(|s| self.float("lambda", &s));
        let m = self.required("mu", mu).and_then(|s| self.float("mu", &s));
        let (l, m) = (l?, m?);
        match LameParameters::new(l, m) {
            Ok(p) => Some(p),
            Err(Error::Config(e)) => {
                self.errs.extend(e);
                None
            }
            Err(e) => {
                self.errs.push(e.to_string());
                None
            }
        }
    }

    fn float(&mut self, name: &str, s: &Scalar) -> Option<f64> {
        s.to_f64().map_err(|e| self.errs.push(format!("{name}: {e}"))).ok()
    }

    fn rational(&mut self, name: &str, s: &Scalar) -> Option<BigRational> {
        s.to_rational().map_err(|e| self.errs.push(format!("{name}: {e}"))).ok()
    }

    fn exact_pair(&mut self, lambda: &Scalar, mu: &Scalar) -> Option<(BigRational, BigRational)> {
        let (l, m) = (self.rational("lambda", lambda), self.rational("mu", mu));
        let (l, m) = (l?, m?);
        match crate::lame::check_lame(&l, &m) {
            Ok(()) => Some((l, m)),
            Err(Error::Config(e)) => {
                self.errs.extend(e);
                None
            }
            Err(e) => {
                self.errs.push(e.to_string());
                None
            }
        }
    }

    fn geometry(&mut self, g: &Option<Geometry>) -> Option<Geometry> {
        let g = self.required("geometry", g)?;
        match g.validate() {
            Ok(()) => Some(g),
            Err(Error::Config(e)) => {
                self.errs.extend(e);
                None
            }
            Err(e) => {
                self.errs.push(e.to_string());
                None
            }
        }
    }

    fn tol(&mut self, t: Option<f64>) -> f64 {
        let t = t.unwrap_or(1e-8);
        self.positive("tol", t);
        t
    }

    fn directions(&mut self, n: Option<usize>) -> usize {
        let n = n.unwrap_or(32);
        if n < 16 || n % 2 != 0 {
            self.errs.push(format!("directions must be even and at least 16 (got {n})"));
        }
        n
    }
}

/// Parses and validates a TOML configuration. Unknown keys, keys that the
/// selected mode does not use, and every violated invariant are reported
/// together.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::config(e.to_string()))?;
    validate(&raw)
}

/// Validation of an already parsed document.
pub fn validate(raw: &RawConfig) -> Result<RunConfig> {
    let Some(mode) = raw.mode else {
        return Err(Error::config(
            "`mode` is required (verify-algebra, verify-induction, solve, farfield-sweep, itp-scan or headline)",
        ));
    };
    let mut c = Checker { mode, errs: Vec::new() };
    let jobs = raw.jobs.unwrap_or(1);
    if jobs == 0 || jobs > 256 {
        c.errs.push(format!("jobs must lie in 1..=256 (got {jobs})"));
    }
    let output = raw.output.clone().unwrap_or_else(|| mode.name().to_string());
    if output.is_empty() || std::path::Path::new(&output).is_absolute() || output.split(['/', '\\']).any(|p| p == "..") {
        c.errs.push(format!("output must be a relative path inside the output root (got {output:?})"));
    }

    let task = match mode {
        Mode::VerifyAlgebra => build_verify_algebra(&mut c, raw),
        Mode::VerifyInduction => build_verify_induction(&mut c, raw),
        Mode::Solve => build_solve(&mut c, raw),
        Mode::FarfieldSweep => build_sweep(&mut c, raw),
        Mode::ItpScan => build_itp(&mut c, raw),
        Mode::Headline => build_headline(&mut c, raw),
    };
    match task {
        Some(task) if c.errs.is_empty() => Ok(RunConfig { task, seed: raw.seed.unwrap_or(0), output, jobs }),
        _ => Err(Error::Config(c.errs)),
    }
}

fn scattering_only(c: &mut Checker, raw: &RawConfig) {
    c.unused("rho0", &raw.rho0);
    c.unused("geometry", &raw.geometry);
    c.unused("omega", &raw.omega);
    c.unused("omega_range", &raw.omega_range);
    c.unused("cells", &raw.cells);
    c.unused("directions", &raw.directions);
    c.unused("tol", &raw.tol);
    c.unused("incident", &raw.incident);
    c.unused("floor", &raw.floor);
    c.unused("collapse", &raw.collapse);
    c.unused("max_depth", &raw.max_depth);
    c.unused("headline", &raw.headline);
}

fn build_verify_algebra(c: &mut Checker, raw: &RawConfig) -> Option<Task> {
    scattering_only(c, raw);
    c.unused("max_order", &raw.max_order);
    let lambda = c.required("lambda", &raw.lambda);
    let mu = c.required("mu", &raw.mu);
    let samples = raw.samples.unwrap_or(500);
    c.at_least("samples", samples, 1);
    let (l, m) = c.exact_pair(&lambda?, &mu?)?;
    Some(Task::VerifyAlgebra { lambda: l.to_string(), mu: m.to_string(), rank_one: samples, points: samples })
}

fn build_verify_induction(c: &mut Checker, raw: &RawConfig) -> Option<Task> {
    scattering_only(c, raw);
    let max_order = c.required("max_order", &raw.max_order);
    if let Some(n) = max_order {
        if n > 40 {
            c.errs.push(format!("max_order must be at most 40 (got {n})"));
        }
    }
    let samples = raw.samples.unwrap_or(50);
    let pair = match (&raw.lambda, &raw.mu) {
        (None, None) => None,
        (Some(l), Some(m)) => {
            let (l, m) = c.exact_pair(l, m)?;
            let (a, b) = crate::lame::ab(&l, &m);
            if a == b {
                c.errs.push("the pair gives a = b, which the certificate excludes".into());
            }
            Some((l.to_string(), m.to_string()))
        }
        _ => {
            c.errs.push("give both lambda and mu, or neither".into());
            None
        }
    };
    if samples == 0 && pair.is_none() {
        c.errs.push("nothing to certify: samples is 0 and no (lambda, mu) pair is given".into());
    }
    Some(Task::VerifyInduction { max_order: max_order?, samples, pair })
}

fn scattering_common(c: &mut Checker, raw: &RawConfig) -> Option<(LameParameters, f64, usize)> {
    c.unused("max_order", &raw.max_order);
    c.unused("headline", &raw.headline);
    let params = c.params(&raw.lambda, &raw.mu);
    let rho0 = c.required("rho0", &raw.rho0);
    if let Some(r) = rho0 {
        c.rho0(r);
    }
    let cells = c.required("cells", &raw.cells);
    if let Some(n) = cells {
        c.at_least("cells", n, 4);
    }
    Some((params?, rho0?, cells?))
}

fn build_solve(c: &mut Checker, raw: &RawConfig) -> Option<Task> {
    c.unused("omega_range", &raw.omega_range);
    c.unused("samples", &raw.samples);
    c.unused("floor", &raw.floor);
    c.unused("collapse", &raw.collapse);
    c.unused("max_depth", &raw.max_depth);
    let common = scattering_common(c, raw);
    let geometry = c.geometry(&raw.geometry);
    let omega = c.required("omega", &raw.omega);
    if let Some(o) = omega {
        c.positive("omega", o);
    }
    let incident = raw.incident.unwrap_or_default();
    if !incident.angle.is_finite() {
        c.errs.push("incident.angle must be finite".into());
    }
    let directions = raw.directions.unwrap_or(32);
    c.at_least("directions", directions, 1);
    let tol = c.tol(raw.tol);
    let (params, rho0, cells) = common?;
    Some(Task::Solve { params, geometry: geometry?, rho0, cells, omega: omega?, incident, directions, tol })
}

fn build_sweep(c: &mut Checker, raw: &RawConfig) -> Option<Task> {
    c.unused("omega", &raw.omega);
    c.unused("incident", &raw.incident);
    c.unused("max_depth", &raw.max_depth);
    let common = scattering_common(c, raw);
    let geometry = c.geometry(&raw.geometry);
    let range = c.required("omega_range", &raw.omega_range).map(|r| c.range(r));
    let samples = raw.samples.unwrap_or(40);
    c.at_least("samples", samples, 20);
    let directions = c.directions(raw.directions);
    let tol = c.tol(raw.tol);
    for (name, v) in [("floor", raw.floor), ("collapse", raw.collapse)] {
        if let Some(v) = v {
            c.positive(name, v);
        }
    }
    let (params, rho0, cells) = common?;
    Some(Task::FarfieldSweep {
        params,
        geometry: geometry?,
        rho0,
        cells,
        omega_range: range?,
        samples,
        directions,
        tol,
        floor: raw.floor,
        collapse: raw.collapse,
    })
}

fn build_itp(c: &mut Checker, raw: &RawConfig) -> Option<Task> {
    c.unused("omega", &raw.omega);
    c.unused("incident", &raw.incident);
    c.unused("directions", &raw.directions);
    c.unused("tol", &raw.tol);
    c.unused("floor", &raw.floor);
    c.unused("collapse", &raw.collapse);
    let common = scattering_common(c, raw);
    let geometry = c.geometry(&raw.geometry);
    let (width, height) = match geometry {
        Some(Geometry::Rectangle { width, height }) => (width, height),
        Some(_) => {
            c.errs.push("itp-scan needs a rectangle geometry".into());
            (0.0, 0.0)
        }
        None => (0.0, 0.0),
    };
    let range = c.required("omega_range", &raw.omega_range).map(|r| c.range(r));
    let samples = raw.samples.unwrap_or(40);
    c.at_least("samples", samples, 3);
    if let Some(d) = raw.max_depth {
        c.positive("max_depth", d);
    }
    let (params, rho0, cells) = common?;
    geometry?;
    Some(Task::ItpScan { params, width, height, rho0, cells, omega_range: range?, samples, max_depth: raw.max_depth })
}

fn build_headline(c: &mut Checker, raw: &RawConfig) -> Option<Task> {
    c.unused("omega", &raw.omega);
    c.unused("incident", &raw.incident);
    c.unused("max_order", &raw.max_order);
    c.unused("floor", &raw.floor);
    c.unused("collapse", &raw.collapse);
    c.unused("max_depth", &raw.max_depth);
    let mut h = raw.headline.clone().unwrap_or_default();
    if let Some(l) = &raw.lambda {
        h.lambda = c.float("lambda", l)?;
    }
    if let Some(m) = &raw.mu {
        h.mu = c.float("mu", m)?;
    }
    if let Some(r) = raw.rho0 {
        h.rho0 = r;
    }
    match &raw.geometry {
        Some(Geometry::Rectangle { width, height }) => {
            h.rect_width = *width;
            h.rect_height = *height;
        }
        Some(_) => c.errs.push("headline needs a rectangle geometry (the disk control is configured by headline.disk_radius)".into()),
        None => {}
    }
    if let Some([lo, hi]) = raw.omega_range {
        h.omega_min = lo;
        h.omega_max = hi;
    }
    if let Some(n) = raw.cells {
        h.cells = n;
    }
    if let Some(n) = raw.directions {
        h.directions = n;
    }
    if let Some(n) = raw.samples {
        h.samples = n;
    }
    if let Some(t) = raw.tol {
        h.solve_tol = t;
    }
    if let Some(j) = raw.jobs {
        h.jobs = j;
    }
    check_headline(c, &h);
    Some(Task::Headline(h))
}

fn check_headline(c: &mut Checker, h: &HeadlineConfig) {
    if let Err(e) = LameParameters::new(h.lambda, h.mu) {
        match e {
            Error::Config(e) => c.errs.extend(e),
            e => c.errs.push(e.to_string()),
        }
    }
    c.rho0(h.rho0);
    c.positive("rect_width", h.rect_width);
    c.positive("rect_height", h.rect_height);
    c.positive("disk_radius", h.disk_radius);
    c.range([h.omega_min, h.omega_max]);
    c.at_least("cells", h.cells, 4);
    c.directions(Some(h.directions));
    c.at_least("samples", h.samples, 20);
    c.positive("solve_tol", h.solve_tol);
    c.positive("disk_threshold", h.disk_threshold);
    c.positive("rectangle_floor", h.rectangle_floor);
    c.positive("location_tol", h.location_tol);
    if !(h.floor_factor >= 1.0) {
        c.errs.push(format!("floor_factor must be at least 1 (got {})", h.floor_factor));
    }
    if h.jobs == 0 {
        c.errs.push("jobs must be at least 1".into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errors(text: &str) -> Vec<String> {
        match parse_config(text) {
            Err(Error::Config(e)) => e,
            other => panic!("expected a configuration error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_algebra_config() {
        let c = parse_config("mode = \"verify-algebra\"\nlambda = 1\nmu = 1\n").unwrap();
        assert_eq!(c.mode(), Mode::VerifyAlgebra);
        assert_eq!(c.output, "verify-algebra");
        match c.task {
            Task::VerifyAlgebra { lambda, mu, .. } => assert_eq!((lambda.as_str(), mu.as_str()), ("1", "1")),
            t => panic!("{t:?}"),
        }
    }

    #[test]
    fn exact_strings_and_floats() {
        let c = parse_config("mode = \"verify-algebra\"\nlambda = \"-9/10\"\nmu = 1.5\n").unwrap();
        match c.task {
            Task::VerifyAlgebra { lambda, mu, .. } => assert_eq!((lambda.as_str(), mu.as_str()), ("-9/10", "3/2")),
            t => panic!("{t:?}"),
        }
    }

    #[test]
    fn unit_contrast_rejected() {
        let e = errors(
            "mode = \"solve\"\nlambda = 1\nmu = 1\nrho0 = 1.0\nomega = 2.0\ncells = 16\n\
             [geometry]\nkind = \"disk\"\nradius = 0.5\n",
        );
        assert!(e.iter().any(|m| m.contains("different from one")), "{e:?}");
    }

    #[test]
    fn negative_mu_rejected() {
        let e = errors("mode = \"verify-algebra\"\nlambda = 1\nmu = -1\n");
        assert!(e.iter().any(|m| m.contains("mu > 0")), "{e:?}");
    }

    #[test]
    fn every_violation_is_reported() {
        let e = errors(
            "mode = \"farfield-sweep\"\nlambda = 1\nmu = -1\nrho0 = 1\nsamples = 5\ndirections = 15\n\
             incident = { kind = \"s\" }\n[geometry]\nkind = \"disk\"\nradius = -1\n",
        );
        for needle in ["mu > 0", "different from one", "samples", "directions", "incident", "radius", "omega_range", "cells"] {
            assert!(e.iter().any(|m| m.contains(needle)), "missing {needle}: {e:?}");
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = errors("mode = \"verify-algebra\"\nlambda = 1\nmu = 1\nlamda = 2\n");
        assert!(e[0].contains("lamda"), "{e:?}");
        let e = errors("mode = \"headline\"\n[headline]\ncell = 3\n");
        assert!(e[0].contains("cell"), "{e:?}");
    }

    #[test]
    fn mode_is_required() {
        assert!(matches!(parse_config("lambda = 1\n"), Err(Error::Config(_))));
        assert!(matches!(parse_config("mode = \"fly\"\n"), Err(Error::Config(_))));
    }

    #[test]
    fn headline_overrides() {
        let c = parse_config(
            "mode = \"headline\"\nrho0 = 4.0\ncells = 24\n[geometry]\nkind = \"rectangle\"\nwidth = 1.0\nheight = 0.8\n\
             [headline]\nstability = false\n",
        )
        .unwrap();
        let Task::Headline(h) = c.task else { panic!() };
        assert_eq!((h.rho0, h.cells, h.rect_height, h.stability), (4.0, 24, 0.8, false));
        let e = errors("mode = \"headline\"\n[geometry]\nkind = \"disk\"\nradius = 1.0\n");
        assert!(e[0].contains("rectangle"));
    }

    #[test]
    fn output_must_stay_inside_root() {
        let e = errors("mode = \"verify-algebra\"\nlambda = 1\nmu = 1\noutput = \"../x\"\n");
        assert!(e[0].contains("output"));
    }

    #[test]
    fn induction_rejects_equal_ab() {
        // λ = −1, μ = 1 gives a = b = 1.
        let e = errors("mode = \"verify-induction\"\nmax_order = 4\nlambda = -1\nmu = 1\n");
        assert!(e.iter().any(|m| m.contains("lambda + mu")), "{e:?}");
        let e = errors("mode = \"verify-induction\"\nmax_order = 4\nlambda = 1\n");
        assert!(e[0].contains("both"));
    }
}
