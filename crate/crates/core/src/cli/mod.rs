//! Command-line front end.
//!
//! Exit codes: 0 success, 2 argument or validation errors, 3 escape or
//! degeneracy while stepping (after the partial output has been written),
//! 4 I/O failures.

pub mod config;
pub mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::compare::compare;
use crate::conic::{period, ConicElements};
use crate::discrete::{fit_alpha_for_period, run_trajectory_with, seed_from_conic, TimestepRule};
use crate::error::KeplerError;
use crate::oscillator::osc_trajectory;
use crate::params::{PhysicalParams, SchemeParams, SeedData};
use crate::planar::PlanarVec;
use report::{emit_report, write_alpha_fit, write_compare, write_oscillator, AlphaFit, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

const SUBCOMMANDS: &[&str] = &["simulate", "oscillator", "compare", "fit-alpha"];

#[derive(Debug, Parser)]
#[command(name = "exact-kepler", version, about = "Orbit-preserving discrete Kepler problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the discrete Kepler scheme and emit the trajectory.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Simulate(SimulateArgs),
    /// Run the exact discrete harmonic oscillator against its continuous solution.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Oscillator(OscillatorArgs),
    /// Compare drift of the discrete scheme with Euler, leapfrog and RK4.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Compare(CompareArgs),
    /// Fit alpha so one discrete revolution lasts one continuous period.
    #[command(name = "fit-alpha", args_override_self = true, allow_negative_numbers = true)]
    FitAlpha(FitAlphaArgs),
}

#[derive(Debug, Args)]
pub struct ConicArgs {
    /// Semi-latus rectum of the conic.
    #[arg(long)]
    pub p: Option<f64>,
    /// Eccentricity of the conic.
    #[arg(long)]
    pub e: Option<f64>,
    /// Polar angle of perihelion.
    #[arg(long, default_value_t = 0.0)]
    pub phi0: f64,
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    #[command(flatten)]
    pub conic: ConicArgs,
    /// Polar angle of the first point (conic seeding); defaults to phi0.
    #[arg(long)]
    pub phi_init: Option<f64>,
    /// First point as `x,y` (raw seeding).
    #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
    pub r0: Option<PlanarVec>,
    /// Second point as `x,y`; must open the angle 2·delta with r0.
    #[arg(long, value_parser = parse_vec, allow_hyphen_values = true, conflicts_with = "r1_radius")]
    pub r1: Option<PlanarVec>,
    /// Radius of the second point, placed counterclockwise at angle 2·delta from r0.
    #[arg(long)]
    pub r1_radius: Option<f64>,
    /// First time step.
    #[arg(long)]
    pub dt0: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// Half of the polar angle swept per step.
    #[arg(long, conflicts_with = "steps_per_rev")]
    pub delta: Option<f64>,
    /// Steps per revolution N; sets delta = pi/N.
    #[arg(long)]
    pub steps_per_rev: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct PhysArgs {
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Flat key=value file with the same keys as the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub seed: SeedArgs,
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub phys: PhysArgs,
    #[arg(long)]
    pub n_steps: usize,
    /// Use 2cos(delta) instead of 2cos(2 delta) in the time-step recursion.
    #[arg(long)]
    pub half_angle_timestep: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OscillatorArgs {
    #[arg(long)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub v0: f64,
    /// Time step, in (0, pi).
    #[arg(long)]
    pub h: f64,
    #[arg(long)]
    pub n_steps: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub conic: ConicArgs,
    #[arg(long)]
    pub steps_per_rev: usize,
    #[arg(long, default_value_t = 10)]
    pub revolutions: usize,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[command(flatten)]
    pub phys: PhysArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FitAlphaArgs {
    #[command(flatten)]
    pub conic: ConicArgs,
    #[arg(long)]
    pub steps_per_rev: usize,
    #[command(flatten)]
    pub phys: PhysArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Defaults to `key = value` text.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse_vec(s: &str) -> Result<PlanarVec, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("bad x component {x:?}: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("bad y component {y:?}: {e}"))?;
    Ok(PlanarVec::new(x, y))
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(err: io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("I/O error: {err}"),
        }
    }
}

/// Errors raised while validating inputs, before any stepping, are usage errors.
impl From<KeplerError> for Failure {
    fn from(err: KeplerError) -> Self {
        Self::usage(err.to_string())
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run_cli(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let args = match merge_config(argv) {
        Ok(args) => args,
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{err}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", err.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => simulate(a, stdout),
        Command::Oscillator(a) => oscillator(a, stdout),
        Command::Compare(a) => run_compare(a, stdout),
        Command::FitAlpha(a) => fit_alpha(a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Inserts config-file arguments right after the subcommand so that later
/// command-line flags override them.
fn merge_config(argv: &[String]) -> Result<Vec<String>, String> {
    let Some(path) = config::find_config_path(argv) else {
        return Ok(argv.to_vec());
    };
    let extra = config::load_config(path.as_ref()).map_err(|e| e.0)?;
    let at = argv
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.as_str()))
        .ok_or("--config must follow a subcommand")?;
    let mut merged = argv[..=at].to_vec();
    merged.extend(extra);
    merged.extend_from_slice(&argv[at + 1..]);
    Ok(merged)
}

fn with_output<F>(path: Option<&PathBuf>, stdout: &mut dyn Write, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(path) => {
            let file = File::create(path).map_err(Failure::io)?;
            let mut w = BufWriter::new(file);
            body(&mut w).map_err(Failure::io)?;
            w.flush().map_err(Failure::io)
        }
        None => {
            body(stdout).map_err(Failure::io)?;
            stdout.flush().map_err(Failure::io)
        }
    }
}

fn physical(a: &PhysArgs) -> Result<PhysicalParams, Failure> {
    Ok(PhysicalParams::new(a.m, a.k)?)
}

fn conic_of(a: &ConicArgs, phys: &PhysicalParams) -> Result<ConicElements, Failure> {
    match (a.p, a.e) {
        (Some(p), Some(e)) => Ok(ConicElements::from_shape(p, e, a.phi0, phys)?),
        _ => Err(Failure::usage("conic input needs both --p and --e")),
    }
}

fn scheme_of(a: &SchemeArgs) -> Result<SchemeParams, Failure> {
    let scheme = match (a.delta, a.steps_per_rev) {
        (Some(delta), None) => SchemeParams::new(a.alpha, delta)?,
        (None, Some(n)) => SchemeParams::with_steps_per_rev(a.alpha, n)?,
        _ => return Err(Failure::usage("give exactly one of --delta or --steps-per-rev")),
    };
    Ok(scheme)
}

fn seed_of(a: &SeedArgs, scheme: &SchemeParams, phys: &PhysicalParams) -> Result<SeedData, Failure> {
    let conic_given = a.conic.p.is_some() || a.conic.e.is_some() || a.phi_init.is_some();
    let raw_given = a.r0.is_some() || a.r1.is_some() || a.r1_radius.is_some() || a.dt0.is_some();
    match (conic_given, raw_given) {
        (true, false) => {
            let conic = conic_of(&a.conic, phys)?;
            Ok(seed_from_conic(&conic, a.phi_init.unwrap_or(conic.phi0), scheme, phys)?)
        }
        (false, true) => {
            let (Some(r0), Some(dt0)) = (a.r0, a.dt0) else {
                return Err(Failure::usage(
                    "raw seeding needs --r0, --dt0 and one of --r1 / --r1-radius",
                ));
            };
            match (a.r1, a.r1_radius) {
                (Some(r1), None) => Ok(SeedData::new(r0, r1, dt0)),
                (None, Some(radius)) => Ok(SeedData::from_first_point(r0, radius, dt0, scheme)?),
                _ => Err(Failure::usage("raw seeding needs exactly one of --r1 / --r1-radius")),
            }
        }
        (true, true) => Err(Failure::usage(
            "give either conic inputs (--p, --e) or a raw seed (--r0, --r1, --dt0), not both",
        )),
        (false, false) => Err(Failure::usage(
            "missing orbit: give --p and --e, or --r0, --r1 and --dt0",
        )),
    }
}

fn simulate(a: SimulateArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let phys = physical(&a.phys)?;
    let scheme = scheme_of(&a.scheme)?;
    let seed = seed_of(&a.seed, &scheme, &phys)?;
    let rule = if a.half_angle_timestep {
        TimestepRule::HalfAngle
    } else {
        TimestepRule::FullAngle
    };
    let traj = run_trajectory_with(&seed, &scheme, &phys, a.n_steps, rule)?;
    with_output(a.out.output.as_ref(), stdout, |w| emit_report(&traj, a.out.format, w))?;
    match &traj.termination {
        None => Ok(()),
        Some(t) => Err(Failure {
            code: EXIT_DOMAIN,
            message: format!("run ended after {} of {} steps: {}", t.n, a.n_steps, t.error),
        }),
    }
}

fn oscillator(a: OscillatorArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let xs = osc_trajectory(a.x0, a.v0, a.h, a.n_steps)?;
    with_output(a.out.output.as_ref(), stdout, |w| {
        write_oscillator(&xs, a.x0, a.v0, a.h, a.out.format, w)
    })
}

fn run_compare(a: CompareArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let phys = physical(&a.phys)?;
    let conic = conic_of(&a.conic, &phys)?;
    let report = compare(&conic, a.steps_per_rev, a.revolutions, a.alpha, &phys)?;
    with_output(a.out.output.as_ref(), stdout, |w| {
        write_compare(&report, a.out.format, w)
    })
}

fn fit_alpha(a: FitAlphaArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let phys = physical(&a.phys)?;
    let conic = conic_of(&a.conic, &phys)?;
    let alpha = fit_alpha_for_period(&conic, a.steps_per_rev, &phys)?;
    let continuous = period(&conic, &phys)?;
    let scheme = SchemeParams::with_steps_per_rev(alpha, a.steps_per_rev)?;
    let seed = seed_from_conic(&conic, conic.phi0, &scheme, &phys)?;
    let traj = run_trajectory_with(&seed, &scheme, &phys, a.steps_per_rev, TimestepRule::FullAngle)?;
    if let Some(t) = traj.termination {
        return Err(Failure {
            code: EXIT_DOMAIN,
            message: t.error.to_string(),
        });
    }
    let discrete_period: f64 = traj.time_steps().iter().take(a.steps_per_rev).sum();
    let fit = AlphaFit {
        alpha,
        steps_per_rev: a.steps_per_rev,
        period: continuous,
        discrete_period,
        relative_error: (discrete_period - continuous).abs() / continuous,
    };
    with_output(a.output.as_ref(), stdout, |w| write_alpha_fit(&fit, a.format, w))
}
