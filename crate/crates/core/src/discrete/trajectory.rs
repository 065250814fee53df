use serde::{Deserialize, Serialize};

use super::invariants::{invariants_at, InvariantSet};
use super::orbit::{orbit_params_from_seed, orbit_residual, u_transform, DiscreteOrbitParams};
use super::stepper::{step_with, DiscreteState, TimestepRule};
use crate::error::{KeplerError, Result};
use crate::params::{PhysicalParams, SchemeParams, SeedData};
use crate::planar::PlanarVec;

/// One point of a discrete trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub n: usize,
    pub t: f64,
    pub r: PlanarVec,
    pub radius: f64,
    pub phi: f64,
    /// `Δt_n`; absent when the run stopped before `r_{n+1}` could be produced.
    pub dt: Option<f64>,
    /// Invariants of the pair `(r_n, r_{n+1})`; absent together with `dt`.
    pub inv: Option<InvariantSet>,
}

/// Why a run stopped before reaching the requested number of steps.
#[derive(Debug, Clone, PartialEq)]
pub struct Termination {
    /// Index of the last point produced.
    pub n: usize,
    pub error: KeplerError,
}

impl Termination {
    pub fn is_escape(&self) -> bool {
        matches!(self.error, KeplerError::Escape { .. })
    }
}

/// Largest relative drifts of the invariants against the first sample.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DriftSummary {
    /// `max |L_z(n) − L_z(0)| / |L_z(0)|`
    pub max_drift_l: f64,
    /// `max |E(n) − E(0)| / max(1, |E(0)|)`
    pub max_drift_e: f64,
    /// `max |A(n) − A(0)| / max(1, |A(0)|)`
    pub max_drift_a: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub seed: SeedData,
    pub scheme: SchemeParams,
    pub phys: PhysicalParams,
    pub rule: TimestepRule,
    pub params: DiscreteOrbitParams,
    pub samples: Vec<TrajectorySample>,
    pub termination: Option<Termination>,
}

impl Trajectory {
    pub fn escaped(&self) -> bool {
        self.termination.as_ref().is_some_and(Termination::is_escape)
    }

    pub fn radii(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.radius).collect()
    }

    /// Time steps `Δt_0, Δt_1, …` of the samples that carry one.
    pub fn time_steps(&self) -> Vec<f64> {
        self.samples.iter().filter_map(|s| s.dt).collect()
    }

    pub fn u_sequence(&self) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| u_transform(s.radius, &self.params, &self.scheme, &self.phys))
            .collect()
    }

    pub fn orbit_residual(&self, sample: &TrajectorySample) -> f64 {
        orbit_residual(sample.n as u64, sample.radius, &self.params, &self.scheme)
    }

    pub fn max_orbit_residual(&self) -> f64 {
        self.samples.iter().map(|s| self.orbit_residual(s)).fold(0.0, f64::max)
    }

    pub fn drift(&self) -> DriftSummary {
        let mut invs = self.samples.iter().filter_map(|s| s.inv);
        let Some(first) = invs.next() else {
            return DriftSummary::default();
        };
        let e_scale = first.energy.abs().max(1.0);
        let a_scale = first.runge_lenz.norm().max(1.0);
        invs.fold(DriftSummary::default(), |acc, inv| DriftSummary {
            max_drift_l: acc.max_drift_l.max((inv.l_z - first.l_z).abs() / first.l_z.abs()),
            max_drift_e: acc.max_drift_e.max((inv.energy - first.energy).abs() / e_scale),
            max_drift_a: acc
                .max_drift_a
                .max((inv.runge_lenz - first.runge_lenz).norm() / a_scale),
        })
    }
}

/// Runs the full-angle scheme for `n_steps`, producing samples `0..=n_steps`.
pub fn run_trajectory(
    seed: &SeedData,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
    n_steps: usize,
) -> Result<Trajectory> {
    run_trajectory_with(seed, scheme, phys, n_steps, TimestepRule::FullAngle)
}

/// Runs the scheme with the chosen time-step rule.
///
/// Sample `n` carries `Δt_n` and the invariants of `(r_n, r_{n+1})`, so a run
/// of `n_steps` advances the window one point past the last sample. If a step
/// fails (escape past the asymptote, degeneracy) the last reachable point is
/// emitted without `dt`/invariants and the failure is recorded in
/// [`Trajectory::termination`]; invalid seeds are rejected with an error.
pub fn run_trajectory_with(
    seed: &SeedData,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
    n_steps: usize,
    rule: TimestepRule,
) -> Result<Trajectory> {
    let mut state = DiscreteState::from_seed(seed, scheme, phys)?;
    let params = orbit_params_from_seed(seed, scheme, phys)?;
    let mut samples = Vec::with_capacity(n_steps + 1);
    samples.push(sample(0, 0.0, seed.r0, Some((seed.r1, seed.dt0)), scheme, phys));
    let mut termination = None;
    for _ in 0..n_steps {
        match step_with(&state, scheme, phys, rule) {
            Ok(next) => {
                samples.push(sample(
                    state.n(),
                    state.t_curr(),
                    state.r_curr(),
                    Some((next.r_curr(), next.dt_prev())),
                    scheme,
                    phys,
                ));
                state = next;
            }
            Err(error) => {
                samples.push(sample(state.n(), state.t_curr(), state.r_curr(), None, scheme, phys));
                termination = Some(Termination { n: state.n(), error });
                break;
            }
        }
    }
    Ok(Trajectory {
        seed: *seed,
        scheme: *scheme,
        phys: *phys,
        rule,
        params,
        samples,
        termination,
    })
}

fn sample(
    n: usize,
    t: f64,
    r: PlanarVec,
    next: Option<(PlanarVec, f64)>,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
) -> TrajectorySample {
    TrajectorySample {
        n,
        t,
        r,
        radius: r.norm(),
        phi: r.angle(),
        dt: next.map(|(_, dt)| dt),
        inv: next.map(|(r_next, dt)| invariants_at(r, r_next, dt, scheme, phys)),
    }
}
