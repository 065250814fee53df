//! CSV and JSON renderings of trajectories, oscillator runs, comparisons and fits.

use std::io::{self, Write};

use serde::Serialize;

use crate::compare::CompareReport;
use crate::discrete::{DiscreteOrbitParams, Trajectory};

pub const TRAJECTORY_HEADER: &str = "n,t,x,y,r,phi,dt,L_z,E,A_x,A_y,orbit_residual";
pub const OSCILLATOR_HEADER: &str = "n,t,x,x_exact,abs_error";
pub const COMPARE_HEADER: &str = "method,steps,dt,max_drift_E,final_drift_E,max_drift_L,max_orbit_residual,failed_at";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// 17 significant digits, enough for any binary64 value to round-trip.
pub fn render(x: f64) -> String {
    format!("{x:.16e}")
}

fn render_opt(x: Option<f64>) -> String {
    x.map(render).unwrap_or_default()
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct TrajectoryRow {
    n: usize,
    t: f64,
    x: f64,
    y: f64,
    r: f64,
    phi: f64,
    dt: Option<f64>,
    L_z: Option<f64>,
    E: Option<f64>,
    A_x: Option<f64>,
    A_y: Option<f64>,
    orbit_residual: f64,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct TrajectorySummary {
    max_drift_L: f64,
    max_drift_E: f64,
    max_drift_A: f64,
    orbit_params: DiscreteOrbitParams,
    escaped: bool,
    stopped_at: Option<usize>,
    stop_reason: Option<String>,
}

#[derive(Serialize)]
struct TrajectoryDocument {
    samples: Vec<TrajectoryRow>,
    summary: TrajectorySummary,
}

fn rows(traj: &Trajectory) -> impl Iterator<Item = TrajectoryRow> + '_ {
    traj.samples.iter().map(|s| TrajectoryRow {
        n: s.n,
        t: s.t,
        x: s.r.x,
        y: s.r.y,
        r: s.radius,
        phi: s.phi,
        dt: s.dt,
        L_z: s.inv.map(|i| i.l_z),
        E: s.inv.map(|i| i.energy),
        A_x: s.inv.map(|i| i.runge_lenz.x),
        A_y: s.inv.map(|i| i.runge_lenz.y),
        orbit_residual: traj.orbit_residual(s),
    })
}

/// Marker line appended to CSV output when a run stopped early.
pub fn stop_marker(traj: &Trajectory) -> Option<String> {
    traj.termination.as_ref().map(|t| {
        if t.is_escape() {
            format!("# {}", t.error)
        } else {
            format!("# stopped at n={}: {}", t.n, t.error)
        }
    })
}

pub fn emit_report<W: Write + ?Sized>(traj: &Trajectory, format: Format, out: &mut W) -> io::Result<()> {
    match format {
        Format::Csv => write_trajectory_csv(traj, out),
        Format::Json => write_trajectory_json(traj, out),
    }
}

pub fn write_trajectory_csv<W: Write + ?Sized>(traj: &Trajectory, out: &mut W) -> io::Result<()> {
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for row in rows(traj) {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            row.n,
            render(row.t),
            render(row.x),
            render(row.y),
            render(row.r),
            render(row.phi),
            render_opt(row.dt),
            render_opt(row.L_z),
            render_opt(row.E),
            render_opt(row.A_x),
            render_opt(row.A_y),
            render(row.orbit_residual),
        )?;
    }
    if let Some(marker) = stop_marker(traj) {
        writeln!(out, "{marker}")?;
    }
    Ok(())
}

pub fn write_trajectory_json<W: Write + ?Sized>(traj: &Trajectory, out: &mut W) -> io::Result<()> {
    let drift = traj.drift();
    let doc = TrajectoryDocument {
        samples: rows(traj).collect(),
        summary: TrajectorySummary {
            max_drift_L: drift.max_drift_l,
            max_drift_E: drift.max_drift_e,
            max_drift_A: drift.max_drift_a,
            orbit_params: traj.params,
            escaped: traj.escaped(),
            stopped_at: traj.termination.as_ref().map(|t| t.n),
            stop_reason: traj.termination.as_ref().map(|t| t.error.to_string()),
        },
    };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)
}

#[derive(Serialize)]
struct OscillatorRow {
    n: usize,
    t: f64,
    x: f64,
    x_exact: f64,
    abs_error: f64,
}

#[derive(Serialize)]
struct OscillatorDocument {
    samples: Vec<OscillatorRow>,
    max_abs_error: f64,
}

/// Discrete samples `xs` against `x0 cos(nh) + v0 sin(nh)`.
pub fn write_oscillator<W: Write + ?Sized>(
    xs: &[f64],
    x0: f64,
    v0: f64,
    h: f64,
    format: Format,
    out: &mut W,
) -> io::Result<()> {
    let samples: Vec<_> = xs
        .iter()
        .enumerate()
        .map(|(n, &x)| {
            let t = n as f64 * h;
            let x_exact = x0 * t.cos() + v0 * t.sin();
            OscillatorRow {
                n,
                t,
                x,
                x_exact,
                abs_error: (x - x_exact).abs(),
            }
        })
        .collect();
    match format {
        Format::Csv => {
            writeln!(out, "{OSCILLATOR_HEADER}")?;
            for s in &samples {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    s.n,
                    render(s.t),
                    render(s.x),
                    render(s.x_exact),
                    render(s.abs_error)
                )?;
            }
            Ok(())
        }
        Format::Json => {
            let max_abs_error = samples.iter().map(|s| s.abs_error).fold(0.0, f64::max);
            serde_json::to_writer_pretty(&mut *out, &OscillatorDocument { samples, max_abs_error })?;
            writeln!(out)
        }
    }
}

pub fn write_compare<W: Write + ?Sized>(report: &CompareReport, format: Format, out: &mut W) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{COMPARE_HEADER}")?;
            for r in &report.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.method,
                    r.steps,
                    render(r.dt),
                    render(r.max_drift_e),
                    render(r.final_drift_e),
                    render(r.max_drift_l),
                    render(r.max_orbit_residual),
                    r.failed_at.map(|n| n.to_string()).unwrap_or_default(),
                )?;
            }
            Ok(())
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
    }
}

/// Result of `fit-alpha`: the fitted α and the period it reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaFit {
    pub alpha: f64,
    pub steps_per_rev: usize,
    pub period: f64,
    pub discrete_period: f64,
    pub relative_error: f64,
}

pub fn write_alpha_fit<W: Write + ?Sized>(fit: &AlphaFit, format: Option<Format>, out: &mut W) -> io::Result<()> {
    match format {
        None => {
            writeln!(out, "alpha = {}", fit.alpha)?;
            writeln!(out, "steps_per_rev = {}", fit.steps_per_rev)?;
            writeln!(out, "period = {}", fit.period)?;
            writeln!(out, "discrete_period = {}", fit.discrete_period)?;
            writeln!(out, "relative_error = {:e}", fit.relative_error)
        }
        Some(Format::Csv) => {
            writeln!(out, "alpha,steps_per_rev,period,discrete_period,relative_error")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                render(fit.alpha),
                fit.steps_per_rev,
                render(fit.period),
                render(fit.discrete_period),
                render(fit.relative_error)
            )
        }
        Some(Format::Json) => {
            serde_json::to_writer_pretty(&mut *out, fit)?;
            writeln!(out)
        }
    }
}
