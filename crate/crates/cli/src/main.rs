//! `kzblocks`: run the block, flatness, integral and asymptotic checks and
//! write a JSON report.
//!
//! Exit status is 0 when every check passes, 1 when a check fails
//! numerically and 2 for invalid input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kzblocks::blocks::Configuration;
use kzblocks::verify::{
    check_asymptotics, check_block_dimensions, check_block_properties, check_flatness, check_flatness_order,
    default_tolerance, identity_record, integral_i, selberg_record, CheckRecord, Resolution,
    VerificationReport, SCHEMA_VERSION,
};
use kzblocks::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

const RANDOM_CONFIGURATIONS: usize = 5;
const ASYMPTOTIC_TOLERANCE: f64 = 0.02;
const FLATNESS_TOLERANCE: f64 = 1e-5;

#[derive(Parser, Debug)]
#[command(
    name = "kzblocks",
    version,
    about = "Level-one sl2 conformal blocks and their integral representation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Block-space dimension and generator properties.
    Blocks(RunArgs),
    /// I(z) = C s(z) and the scalar Selberg-type formula.
    Selberg(RunArgs),
    /// Finite-difference flatness of s(z) under the KZ connection.
    Flatness(RunArgs),
    /// Leading behaviour of I as the pair gaps shrink.
    Asymptotics(RunArgs),
    /// Every check above in one report.
    All(RunArgs),
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Number of pairs N (1, 2 or 3).
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// The 2N points z_1..z_2N, comma separated; defaults to 0,2,..,1,3,..
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    z: Option<Vec<f64>>,
    /// Nodes per circle of each double loop (the finer pass doubles it).
    #[arg(long)]
    samples: Option<usize>,
    /// Gauss-Jacobi nodes for convergent variables.
    #[arg(long)]
    quad_n: Option<usize>,
    /// Tolerance of the headline check of the command.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Finite-difference steps for `flatness`.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1e-5])]
    h: Vec<f64>,
    /// Pair gaps for `asymptotics`.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.2, 0.1, 0.05])]
    gaps: Vec<f64>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the random configurations of `blocks`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Validated configuration of a run.
#[derive(Debug, Clone)]
struct RunConfig {
    n: usize,
    z: Configuration,
    resolution: Resolution,
    tolerance: Option<f64>,
    steps: Vec<f64>,
    gaps: Vec<f64>,
    out: Option<PathBuf>,
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Convergence(_) | Error::NonIntegrable(_) | Error::Refinement { .. } => {
                Failure::Numerical(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl RunConfig {
    fn from_args(args: &RunArgs) -> Result<Self, Failure> {
        if !(1..=3).contains(&args.n) {
            return Err(Failure::Usage(format!("--n must be 1, 2 or 3, got {}", args.n)));
        }
        let z = match &args.z {
            None => Configuration::preset(args.n),
            Some(pts) => {
                if pts.len() != 2 * args.n {
                    return Err(Failure::Usage(format!(
                        "--z needs {} points for N = {}, got {}",
                        2 * args.n,
                        args.n,
                        pts.len()
                    )));
                }
                if pts.iter().any(|p| !p.is_finite()) {
                    return Err(Failure::Usage("--z entries must be finite".into()));
                }
                Configuration::interleaved(pts)?
            }
        };
        let mut resolution = Resolution::for_pairs(args.n);
        if let Some(s) = args.samples {
            resolution.samples = s;
        }
        if let Some(q) = args.quad_n {
            resolution.quad_n = q;
        }
        if resolution.samples < 8 || resolution.quad_n < 1 {
            return Err(Failure::Usage("--samples must be ≥ 8 and --quad-n ≥ 1".into()));
        }
        if let Some(t) = args.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Failure::Usage(format!("--tolerance must be positive, got {t}")));
            }
        }
        if args.h.is_empty() || args.h.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
            return Err(Failure::Usage("--h entries must be positive".into()));
        }
        if args.gaps.is_empty() || args.gaps.iter().any(|&g| !(g > 0.0 && g < 1.0)) {
            return Err(Failure::Usage("--gaps entries must lie in (0, 1)".into()));
        }
        Ok(Self {
            n: args.n,
            z,
            resolution,
            tolerance: args.tolerance,
            steps: args.h.clone(),
            gaps: args.gaps.clone(),
            out: args.out.clone(),
            seed: args.seed,
        })
    }
}

fn random_configuration(rng: &mut ChaCha8Rng, n: usize) -> Result<Configuration, Failure> {
    let gaps: Vec<f64> = (0..2 * n - 1).map(|_| rng.gen_range(0.25..2.0)).collect();
    let start = rng.gen_range(-1.0..1.0);
    Ok(Configuration::from_chain_gaps(start, &gaps)?)
}

fn dimension_record(cfg: &RunConfig) -> Result<CheckRecord, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut configs = vec![cfg.z.clone()];
    for _ in 0..RANDOM_CONFIGURATIONS {
        configs.push(random_configuration(&mut rng, cfg.n)?);
    }
    Ok(check_block_dimensions(&configs)?)
}

fn run_blocks(cfg: &RunConfig) -> Result<Vec<CheckRecord>, Failure> {
    Ok(vec![check_block_properties(&cfg.z)?, dimension_record(cfg)?])
}

fn run_selberg(cfg: &RunConfig) -> Result<Vec<CheckRecord>, Failure> {
    let started = Instant::now();
    let tol = cfg.tolerance.unwrap_or_else(|| default_tolerance(cfg.n));
    let result = integral_i(&cfg.z, cfg.resolution, tol)?;
    Ok(vec![
        identity_record(&cfg.z, &result, started)?,
        selberg_record(&cfg.z, &result, started)?,
    ])
}

fn run_flatness(cfg: &RunConfig, tolerance: Option<f64>) -> Result<Vec<CheckRecord>, Failure> {
    let tol = tolerance.unwrap_or(FLATNESS_TOLERANCE);
    let x = cfg.z.real_points()?;
    let mut sorted = x.clone();
    sorted.sort_by(f64::total_cmp);
    let min_gap = sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let order_step = (1e-2f64).min(0.1 * min_gap);
    Ok(vec![
        check_flatness(&cfg.z, &cfg.steps, tol)?,
        check_flatness_order(&cfg.z, order_step)?,
    ])
}

fn run_asymptotics(cfg: &RunConfig, tolerance: Option<f64>) -> Result<Vec<CheckRecord>, Failure> {
    let tol = tolerance.unwrap_or(ASYMPTOTIC_TOLERANCE);
    Ok(vec![check_asymptotics(cfg.n, &cfg.gaps, cfg.resolution, tol)?])
}

fn execute(command: &Command) -> Result<(VerificationReport, Option<PathBuf>), Failure> {
    let (args, which) = match command {
        Command::Blocks(a) => (a, "blocks"),
        Command::Selberg(a) => (a, "selberg"),
        Command::Flatness(a) => (a, "flatness"),
        Command::Asymptotics(a) => (a, "asymptotics"),
        Command::All(a) => (a, "all"),
    };
    let cfg = RunConfig::from_args(args)?;
    let records = match which {
        "blocks" => run_blocks(&cfg)?,
        "selberg" => run_selberg(&cfg)?,
        "flatness" => run_flatness(&cfg, cfg.tolerance)?,
        "asymptotics" => run_asymptotics(&cfg, cfg.tolerance)?,
        _ => {
            let mut all = run_blocks(&cfg)?;
            all.extend(run_selberg(&cfg)?);
            all.extend(run_flatness(&cfg, None)?);
            all.extend(run_asymptotics(&cfg, None)?);
            all
        }
    };
    Ok((VerificationReport::new(records), cfg.out))
}

fn summarize(report: &VerificationReport) {
    let mut err = std::io::stderr().lock();
    for r in &report.records {
        let _ = writeln!(
            err,
            "{} {:<18} N={} error={:.3e} tolerance={:.1e} ({:.1?})",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.n_pairs,
            r.relative_error,
            r.tolerance,
            r.wall_time
        );
    }
    let _ = writeln!(
        err,
        "schema {SCHEMA_VERSION}: {} of {} checks passed in {:.1?}",
        report.records.iter().filter(|r| r.passed).count(),
        report.records.len(),
        report.total_wall_time()
    );
}

fn write_report(report: &VerificationReport, out: Option<&PathBuf>) -> Result<(), String> {
    let json = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    match out {
        Some(path) => fs::write(path, json + "\n").map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok((report, out)) => {
            summarize(&report);
            if let Err(e) = write_report(&report, out.as_ref()) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
