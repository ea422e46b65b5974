use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use kerr_epr::config::{ConfigError, ScenarioConfig};
use kerr_epr::sweep::{run_doran_scan, run_sweep, Execution, SweepError};
use kerr_epr::PhysicsError;

const EXIT_USAGE: u8 = 2;
const EXIT_PHYSICS: u8 = 3;

/// Sweep spin precession and CHSH correlations of an EPR pair orbiting a
/// Kerr-Newman black hole, writing CSV.
///
/// Command-line values override the config file.
#[derive(Debug, Parser)]
#[command(name = "kerr-epr", version)]
struct Cli {
    /// Flat `key = value` scenario file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Black-hole mass M (geometric units).
    #[arg(long, value_name = "M")]
    mass: Option<String>,
    /// Spin a/M.
    #[arg(long, value_name = "A/M")]
    spin_ratio: Option<String>,
    /// Charge Q/M.
    #[arg(long, value_name = "Q/M")]
    charge_ratio: Option<String>,
    /// Local orbital speed(s), comma separated.
    #[arg(long, value_name = "V[,V...]", allow_hyphen_values = true)]
    speed: Option<String>,
    /// Observer azimuth Φ in radians.
    #[arg(long, value_name = "RAD")]
    phi: Option<String>,
    #[arg(long, value_name = "R")]
    r_min: Option<String>,
    #[arg(long, value_name = "R")]
    r_max: Option<String>,
    #[arg(long, value_name = "N")]
    r_count: Option<String>,
    /// Radius spacing: linear, log, or horizon (r_min/r_max in units of r+).
    #[arg(long, value_name = "SCALE")]
    r_scale: Option<String>,
    /// CSV destination; `-` for standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<String>,
    /// Column groups: lambda, theta, delta, chsh, chsh_primed, chsh_corrected,
    /// or doran alone for the infalling-chart scan.
    #[arg(long, value_name = "LIST")]
    outputs: Option<String>,
    /// Worker threads for grid evaluation.
    #[arg(long, value_name = "N")]
    threads: Option<String>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Config(c) => c.into(),
            SweepError::Physics(p) => p.into(),
        }
    }
}

fn load_config(cli: &Cli) -> Result<ScenarioConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            ScenarioConfig::parse(&text)?
        }
        None => ScenarioConfig::default(),
    };
    let overrides = [
        ("mass", &cli.mass),
        ("spin_ratio", &cli.spin_ratio),
        ("charge_ratio", &cli.charge_ratio),
        ("speed", &cli.speed),
        ("phi", &cli.phi),
        ("r_min", &cli.r_min),
        ("r_max", &cli.r_max),
        ("r_count", &cli.r_count),
        ("r_scale", &cli.r_scale),
        ("output", &cli.output),
        ("outputs", &cli.outputs),
        ("threads", &cli.threads),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    Ok(cfg)
}

fn open_output(cfg: &ScenarioConfig) -> Result<Box<dyn Write>, CliError> {
    match cfg.output.as_deref() {
        None | Some("-") => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(path) => Ok(Box::new(BufWriter::new(File::create(path)?))),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = load_config(cli)?;
    cfg.validate()?;
    let exec = Execution::Parallel {
        threads: cfg.threads,
    };
    let target = cfg.output.as_deref().unwrap_or("-");
    let (rows, failed) = if cfg.is_doran_scan() {
        let scan = run_doran_scan(&cfg, exec)?;
        let mut out = open_output(&cfg)?;
        scan.write_csv(&mut out)?;
        out.flush()?;
        let singular = scan.singular_radii();
        for r in &singular {
            eprintln!("kerr-epr: horizon singularity at R = {r}");
        }
        let failed = scan.rows.iter().filter(|r| r.velocity.is_err()).count();
        (scan.rows.len(), failed)
    } else {
        let sweep = run_sweep(&cfg, exec)?;
        let mut out = open_output(&cfg)?;
        sweep.write_csv(&mut out)?;
        out.flush()?;
        (sweep.rows.len(), sweep.failed_rows())
    };
    eprintln!("kerr-epr: {rows} rows ({failed} with errors) -> {target}");
    if rows > 0 && failed == rows {
        return Err(CliError::Physics(PhysicsError::InvalidPoint(
            "every grid point failed".into(),
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kerr-epr: error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Physics(_) => EXIT_PHYSICS,
                CliError::Io(_) => 1,
            })
        }
    }
}
