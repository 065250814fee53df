//! Drift comparison between the discrete scheme and the fixed-step baselines
//! on the same bound orbit, with matched step counts per revolution.

use serde::Serialize;

use crate::baseline::{angular_momentum_of, energy_of, reference_step, Method, PhaseState};
use crate::conic::{period, state_on_conic, ConicElements};
use crate::discrete::{run_trajectory, seed_from_conic};
use crate::error::{KeplerError, Result};
use crate::params::{PhysicalParams, SchemeParams};
use crate::planar::PlanarVec;

pub const EXACT_SCHEME: &str = "exact-discrete";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub method: String,
    pub steps: usize,
    /// Fixed step of the baselines; mean step of the discrete scheme.
    pub dt: f64,
    /// `max |E(n) − E(0)| / max(1, |E(0)|)`
    pub max_drift_e: f64,
    pub final_drift_e: f64,
    /// `max |L(n) − L(0)| / |L(0)|`
    pub max_drift_l: f64,
    /// `max |r (1 + e cos(φ − φ₀)) − p| / p` against the starting conic.
    pub max_orbit_residual: f64,
    /// Step at which the run failed, if it did.
    pub failed_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub conic: ConicElements,
    pub steps_per_rev: usize,
    pub revolutions: usize,
    pub alpha: f64,
    pub rows: Vec<CompareRow>,
}

impl CompareReport {
    pub fn row(&self, method: &str) -> Option<&CompareRow> {
        self.rows.iter().find(|r| r.method == method)
    }
}

fn conic_residual(r: PlanarVec, conic: &ConicElements) -> f64 {
    (r.norm() * conic.denominator(r.angle()) - conic.p).abs() / conic.p
}

/// Runs the discrete scheme and every baseline for `revolutions` periods of a
/// bound orbit starting at perihelion. The four runs execute concurrently.
pub fn compare(
    conic: &ConicElements,
    steps_per_rev: usize,
    revolutions: usize,
    alpha: f64,
    phys: &PhysicalParams,
) -> Result<CompareReport> {
    if !conic.is_bound() {
        return Err(KeplerError::Domain(format!(
            "comparison needs a bound orbit, got e = {}",
            conic.e
        )));
    }
    let scheme = SchemeParams::with_steps_per_rev(alpha, steps_per_rev)?;
    let steps = steps_per_rev * revolutions;
    let dt = period(conic, phys)? / steps_per_rev as f64;

    let (exact, baselines) = std::thread::scope(|scope| {
        let exact = scope.spawn(|| exact_row(conic, &scheme, phys, steps));
        let handles: Vec<_> = Method::ALL
            .into_iter()
            .map(|method| scope.spawn(move || baseline_row(method, conic, phys, dt, steps)))
            .collect();
        let baselines: Vec<_> = handles
            .into_iter()
            .map(|h| h.join().expect("baseline run panicked"))
            .collect();
        (exact.join().expect("discrete run panicked"), baselines)
    });

    let mut rows = vec![exact?];
    for row in baselines {
        rows.push(row?);
    }
    Ok(CompareReport {
        conic: *conic,
        steps_per_rev,
        revolutions,
        alpha,
        rows,
    })
}

fn exact_row(conic: &ConicElements, scheme: &SchemeParams, phys: &PhysicalParams, steps: usize) -> Result<CompareRow> {
    let seed = seed_from_conic(conic, conic.phi0, scheme, phys)?;
    let traj = run_trajectory(&seed, scheme, phys, steps)?;
    let drift = traj.drift();
    let invs: Vec<_> = traj.samples.iter().filter_map(|s| s.inv).collect();
    let e0 = invs[0].energy;
    let final_drift_e = (invs[invs.len() - 1].energy - e0).abs() / e0.abs().max(1.0);
    let dts = traj.time_steps();
    Ok(CompareRow {
        method: EXACT_SCHEME.to_string(),
        steps,
        dt: dts.iter().sum::<f64>() / dts.len() as f64,
        max_drift_e: drift.max_drift_e,
        final_drift_e,
        max_drift_l: drift.max_drift_l,
        max_orbit_residual: traj
            .samples
            .iter()
            .map(|s| conic_residual(s.r, conic))
            .fold(0.0, f64::max),
        failed_at: traj.termination.map(|t| t.n),
    })
}

fn baseline_row(
    method: Method,
    conic: &ConicElements,
    phys: &PhysicalParams,
    dt: f64,
    steps: usize,
) -> Result<CompareRow> {
    let (r, v) = state_on_conic(conic, conic.phi0, phys)?;
    let mut state = PhaseState::new(r, v, 0.0);
    let e0 = energy_of(&state, phys);
    let l0 = angular_momentum_of(&state, phys);
    let e_scale = e0.abs().max(1.0);
    let mut row = CompareRow {
        method: method.name().to_string(),
        steps,
        dt,
        max_drift_e: 0.0,
        final_drift_e: 0.0,
        max_drift_l: 0.0,
        max_orbit_residual: conic_residual(r, conic),
        failed_at: None,
    };
    for i in 0..steps {
        match reference_step(method, &state, dt, phys) {
            Ok(next) => state = next,
            Err(_) => {
                row.failed_at = Some(i);
                break;
            }
        }
        let de = (energy_of(&state, phys) - e0).abs() / e_scale;
        row.max_drift_e = row.max_drift_e.max(de);
        row.final_drift_e = de;
        row.max_drift_l = row
            .max_drift_l
            .max((angular_momentum_of(&state, phys) - l0).abs() / l0.abs());
        row.max_orbit_residual = row.max_orbit_residual.max(conic_residual(state.r, conic));
    }
    Ok(row)
}
