use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use elastic_corners::io::{self, Mode, RawConfig, Scalar};
use elastic_corners::Error;

/// Corner-jet certificates and far-field injectivity experiments for 2D elasticity.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Worker threads for frequency sweeps and far-field assembly.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output root (overrides the ELASTIC_CORNERS_OUTPUT environment variable).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact checks of the rank-one determinant identity, the Lamé symbol and its factorisations.
    VerifyAlgebra {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "1")]
        mu: String,
        /// Random instances per identity.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact rank certificates of the corner-jet systems for random Lamé pairs.
    VerifyInduction {
        #[arg(long)]
        max_order: usize,
        /// Random admissible (lambda, mu) pairs.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// One Lippmann–Schwinger solve and its far-field pattern.
    Solve(ConfigArg),
    /// Far-field singular values over a frequency window.
    FarfieldSweep(ConfigArg),
    /// Smallest singular value of the discrete transmission problem over a window.
    ItpScan(ConfigArg),
    /// Rectangle against disk: transmission dips next to far-field injectivity.
    Headline(ConfigArg),
    /// Any configuration, dispatched on its `mode` key.
    Run(ConfigArg),
}

#[derive(Args)]
struct ConfigArg {
    /// TOML configuration document.
    #[arg(long)]
    config: PathBuf,
}

fn config_error(e: &Error) -> ExitCode {
    match e {
        Error::Config(list) => {
            eprintln!("invalid configuration:");
            for m in list {
                eprintln!("  - {m}");
            }
        }
        other => eprintln!("error: {other}"),
    }
    ExitCode::from(io::exit_code(e) as u8)
}

/// Reads a document and checks its mode against the subcommand; a missing
/// mode is taken from the subcommand.
fn load(path: &PathBuf, mode: Option<Mode>) -> Result<(RawConfig, String), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
    let mut raw: RawConfig = toml::from_str(&text).map_err(|e| Error::config(e.to_string()))?;
    if let Some(want) = mode {
        match raw.mode {
            None => raw.mode = Some(want),
            Some(m) if m != want => {
                return Err(Error::config(format!(
                    "the document is a {} configuration, not {}",
                    m.name(),
                    want.name()
                )))
            }
            Some(_) => {}
        }
    }
    Ok((raw, text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let loaded = match cli.command {
        Command::VerifyAlgebra { lambda, mu, samples, seed } => Ok((
            RawConfig {
                mode: Some(Mode::VerifyAlgebra),
                lambda: Some(Scalar::Text(lambda)),
                mu: Some(Scalar::Text(mu)),
                samples: Some(samples),
                seed: Some(seed),
                ..RawConfig::default()
            },
            None,
        )),
        Command::VerifyInduction { max_order, samples, seed } => Ok((
            RawConfig {
                mode: Some(Mode::VerifyInduction),
                max_order: Some(max_order),
                samples: Some(samples),
                seed: Some(seed),
                ..RawConfig::default()
            },
            None,
        )),
        Command::Solve(c) => load(&c.config, Some(Mode::Solve)).map(|(r, t)| (r, Some(t))),
        Command::FarfieldSweep(c) => load(&c.config, Some(Mode::FarfieldSweep)).map(|(r, t)| (r, Some(t))),
        Command::ItpScan(c) => load(&c.config, Some(Mode::ItpScan)).map(|(r, t)| (r, Some(t))),
        Command::Headline(c) => load(&c.config, Some(Mode::Headline)).map(|(r, t)| (r, Some(t))),
        Command::Run(c) => load(&c.config, None).map(|(r, t)| (r, Some(t))),
    };
    let (mut raw, text) = match loaded {
        Ok(x) => x,
        Err(e) => return config_error(&e),
    };
    if cli.jobs.is_some() {
        raw.jobs = cli.jobs;
    }
    let cfg = match io::validate(&raw) {
        Ok(c) => c,
        Err(e) => return config_error(&e),
    };
    let root = cli.out.unwrap_or_else(io::output_root);
    let outcome = match io::run(&cfg, &root, text.as_deref()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: could not write the manifest: {e}");
            return ExitCode::from(io::exit_code(&e) as u8);
        }
    };
    let m = &outcome.manifest;
    for c in &m.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{tag}  {}", c.name);
        } else {
            println!("{tag}  {}: {}", c.name, c.detail);
        }
    }
    if let Some(e) = &m.error {
        eprintln!("error: {e}");
    }
    println!("{} files in {} (exit {})", m.outputs.len(), outcome.dir.display(), outcome.exit_code);
    ExitCode::from(outcome.exit_code as u8)
}
