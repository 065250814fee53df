//! Physical constants, scheme parameters and seed data for the discrete stepper.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::error::{KeplerError, Result};
use crate::planar::{angle_between, PlanarVec};

/// Tolerance on the seed's opening angle, in radians.
pub const SEED_ANGLE_TOL: f64 = 1e-12;

/// Mass `m` and force strength `k` (force = −k r̂ / r²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    m: f64,
    k: f64,
}

impl PhysicalParams {
    pub fn new(m: f64, k: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(KeplerError::InvalidArgument(format!("mass must be positive, got {m}")));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(KeplerError::InvalidArgument(format!(
                "force strength must be positive, got {k}"
            )));
        }
        Ok(Self { m, k })
    }

    /// m = k = 1.
    pub fn unit() -> Self {
        Self { m: 1.0, k: 1.0 }
    }

    #[inline]
    pub fn m(&self) -> f64 {
        self.m
    }

    #[inline]
    pub fn k(&self) -> f64 {
        self.k
    }
}

/// Scheme parameter α and the half-angle δ swept per step.
///
/// Each step advances the polar angle by exactly `Δ = 2δ`. δ is restricted to
/// `(0, π/4)` so that `cos Δ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    alpha: f64,
    delta: f64,
    cap_delta: f64,
}

impl SchemeParams {
    pub fn new(alpha: f64, delta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(KeplerError::InvalidArgument(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        if !(delta > 0.0 && delta < FRAC_PI_4) {
            return Err(KeplerError::InvalidArgument(format!(
                "delta must lie in (0, pi/4), got {delta}"
            )));
        }
        Ok(Self {
            alpha,
            delta,
            cap_delta: 2.0 * delta,
        })
    }

    /// δ = π/N, so that N steps sweep exactly one revolution.
    pub fn with_steps_per_rev(alpha: f64, steps_per_rev: usize) -> Result<Self> {
        if steps_per_rev < 5 {
            return Err(KeplerError::InvalidArgument(format!(
                "steps per revolution must be at least 5 (delta < pi/4), got {steps_per_rev}"
            )));
        }
        Self::new(alpha, std::f64::consts::PI / steps_per_rev as f64)
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Per-step polar angle Δ = 2δ.
    #[inline]
    pub fn cap_delta(&self) -> f64 {
        self.cap_delta
    }
}

/// Initial data `(r₀, r₁, Δt₀)` of a discrete trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedData {
    pub r0: PlanarVec,
    pub r1: PlanarVec,
    pub dt0: f64,
}

impl SeedData {
    pub fn new(r0: PlanarVec, r1: PlanarVec, dt0: f64) -> Self {
        Self { r0, r1, dt0 }
    }

    /// Seed with `r1` at radius `r1_radius`, rotated counterclockwise from `r0` by Δ.
    pub fn from_first_point(r0: PlanarVec, r1_radius: f64, dt0: f64, scheme: &SchemeParams) -> Result<Self> {
        let dir = r0.unit()?;
        let r1 = dir.rotate(scheme.cap_delta()) * r1_radius;
        Ok(Self::new(r0, r1, dt0))
    }

    /// +1 for counterclockwise seeds, −1 for clockwise.
    pub fn orientation(&self) -> f64 {
        if self.r0.cross(self.r1) < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Checks every seed invariant against `scheme`, reporting the first one that fails.
pub fn validate_seed(seed: &SeedData, scheme: &SchemeParams) -> Result<()> {
    if !(seed.r0.is_finite() && seed.r1.is_finite() && seed.dt0.is_finite()) {
        return Err(KeplerError::InvalidArgument("seed contains non-finite values".into()));
    }
    if seed.r0.norm() == 0.0 || seed.r1.norm() == 0.0 {
        return Err(KeplerError::ZeroRadius);
    }
    if seed.dt0 <= 0.0 {
        return Err(KeplerError::NonPositiveTimestep(seed.dt0));
    }
    let actual = angle_between(seed.r0, seed.r1)?;
    if (actual - scheme.cap_delta()).abs() > SEED_ANGLE_TOL {
        return Err(KeplerError::AngleMismatch {
            expected: scheme.cap_delta(),
            actual,
        });
    }
    Ok(())
}
