//! Fixed-step classical integrators for `m r̈ = −k r / r³`, used as drift
//! baselines against the discrete scheme.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KeplerError, Result};
use crate::params::PhysicalParams;
use crate::planar::PlanarVec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExplicitEuler,
    /// Kick-drift-kick Störmer–Verlet.
    Leapfrog,
    Rk4,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::ExplicitEuler, Method::Leapfrog, Method::Rk4];

    pub fn name(self) -> &'static str {
        match self {
            Method::ExplicitEuler => "explicit-euler",
            Method::Leapfrog => "leapfrog",
            Method::Rk4 => "rk4",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = KeplerError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| KeplerError::InvalidArgument(format!("unknown method {s:?}")))
    }
}

/// Position, velocity and time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub r: PlanarVec,
    pub v: PlanarVec,
    pub t: f64,
}

impl PhaseState {
    pub fn new(r: PlanarVec, v: PlanarVec, t: f64) -> Self {
        Self { r, v, t }
    }
}

fn acceleration(r: PlanarVec, phys: &PhysicalParams) -> Result<PlanarVec> {
    let radius = r.norm();
    if !(radius > f64::MIN_POSITIVE.sqrt() && radius.is_finite()) {
        return Err(KeplerError::Singularity(radius));
    }
    Ok(r * (-phys.k() / (phys.m() * radius * radius * radius)))
}

/// One step of `method` with step size `dt > 0`.
pub fn reference_step(method: Method, s: &PhaseState, dt: f64, phys: &PhysicalParams) -> Result<PhaseState> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(KeplerError::InvalidArgument(format!(
            "step size must be positive, got {dt}"
        )));
    }
    let (r, v) = match method {
        Method::ExplicitEuler => {
            let a = acceleration(s.r, phys)?;
            (s.r + s.v * dt, s.v + a * dt)
        }
        Method::Leapfrog => {
            let half = s.v + acceleration(s.r, phys)? * (0.5 * dt);
            let r = s.r + half * dt;
            (r, half + acceleration(r, phys)? * (0.5 * dt))
        }
        Method::Rk4 => {
            let k1v = acceleration(s.r, phys)?;
            let k1r = s.v;
            let k2v = acceleration(s.r + k1r * (0.5 * dt), phys)?;
            let k2r = s.v + k1v * (0.5 * dt);
            let k3v = acceleration(s.r + k2r * (0.5 * dt), phys)?;
            let k3r = s.v + k2v * (0.5 * dt);
            let k4v = acceleration(s.r + k3r * dt, phys)?;
            let k4r = s.v + k3v * dt;
            (
                s.r + (k1r + k2r * 2.0 + k3r * 2.0 + k4r) * (dt / 6.0),
                s.v + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (dt / 6.0),
            )
        }
    };
    if !(r.is_finite() && v.is_finite()) {
        return Err(KeplerError::Singularity(r.norm()));
    }
    Ok(PhaseState::new(r, v, s.t + dt))
}

/// `m v² / 2 − k / |r|`.
pub fn energy_of(s: &PhaseState, phys: &PhysicalParams) -> f64 {
    0.5 * phys.m() * s.v.norm_squared() - phys.k() / s.r.norm()
}

/// `m (r × v)`.
pub fn angular_momentum_of(s: &PhaseState, phys: &PhysicalParams) -> f64 {
    phys.m() * s.r.cross(s.v)
}
