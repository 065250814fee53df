//! Orbit analysis of the discrete scheme: the shifted inverse radius `u_n`,
//! its exact oscillator, the closed-form discrete orbit and conic seeding.

use serde::{Deserialize, Serialize};

use super::invariants::invariants_at;
use crate::conic::{conic_radius, ConicElements};
use crate::error::{KeplerError, Result};
use crate::params::{validate_seed, PhysicalParams, SchemeParams, SeedData};
use crate::planar::PlanarVec;

/// Below this eccentricity the phase θ₀ is meaningless and fixed to zero.
pub const CIRCULAR_EPS: f64 = 1e-13;

/// Parameters of `r_n = 𝓟 / (cos δ + ε cos(nΔ − θ₀))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscreteOrbitParams {
    /// Magnitude of the discrete angular momentum.
    pub cal_l: f64,
    /// Discrete energy.
    pub cal_e: f64,
    /// `𝓛² / (k m α)`.
    pub cal_p: f64,
    pub eps: f64,
    pub theta0: f64,
}

/// `u_n = 1/r_n − α k m cos δ / 𝓛²`.
pub fn u_transform(radius: f64, params: &DiscreteOrbitParams, scheme: &SchemeParams, phys: &PhysicalParams) -> f64 {
    1.0 / radius - scheme.alpha() * phys.k() * phys.m() * scheme.delta().cos() / (params.cal_l * params.cal_l)
}

/// Orbit parameters of the discrete trajectory started from `seed`.
///
/// `ε` and `θ₀` come from the amplitude and phase of `u_n`:
/// `u_n = u₀ cos nΔ + s sin nΔ` with `s = (u₁ − u₀ cos Δ) / sin Δ`, so
/// `ε = 𝓟 · hypot(u₀, s)` and `θ₀ = atan2(s, u₀)`. This equals
/// `sqrt(1 + 2𝓔𝓛²/(mk²))` but does not lose half the digits near `ε = 0`.
pub fn orbit_params_from_seed(
    seed: &SeedData,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
) -> Result<DiscreteOrbitParams> {
    validate_seed(seed, scheme)?;
    let inv = invariants_at(seed.r0, seed.r1, seed.dt0, scheme, phys);
    let cal_l = inv.l_z.abs();
    let cal_p = cal_l * cal_l / (phys.k() * phys.m() * scheme.alpha());
    let mut params = DiscreteOrbitParams {
        cal_l,
        cal_e: inv.energy,
        cal_p,
        eps: 0.0,
        theta0: 0.0,
    };
    let u0 = u_transform(seed.r0.norm(), &params, scheme, phys);
    let u1 = u_transform(seed.r1.norm(), &params, scheme, phys);
    let (sin, cos) = scheme.cap_delta().sin_cos();
    let s = (u1 - u0 * cos) / sin;
    params.eps = cal_p * u0.hypot(s);
    if params.eps >= CIRCULAR_EPS {
        params.theta0 = s.atan2(u0);
    }
    Ok(params)
}

/// `r_n = 𝓟 / (cos δ + ε cos(nΔ − θ₀))`.
pub fn discrete_orbit_radius(n: u64, params: &DiscreteOrbitParams, scheme: &SchemeParams) -> Result<f64> {
    let denom = scheme.delta().cos() + params.eps * (n as f64 * scheme.cap_delta() - params.theta0).cos();
    if denom > 0.0 {
        Ok(params.cal_p / denom)
    } else {
        Err(KeplerError::Domain(format!(
            "point {n} lies past the asymptote of the discrete orbit"
        )))
    }
}

/// `|r_n (cos δ + ε cos(nΔ − θ₀)) − 𝓟| / 𝓟`.
pub fn orbit_residual(n: u64, radius: f64, params: &DiscreteOrbitParams, scheme: &SchemeParams) -> f64 {
    let denom = scheme.delta().cos() + params.eps * (n as f64 * scheme.cap_delta() - params.theta0).cos();
    (radius * denom - params.cal_p).abs() / params.cal_p
}

/// Residuals of the radial oscillator identities over a `u_n` sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialResiduals {
    /// `max |(u_{n+1} − 2u_n + u_{n−1}) / (2 sin δ)² + u_n|`.
    pub oscillator: f64,
    /// Spread of `(u_{n+1} − u_n)² / (2 sin δ)² + u_{n+1} u_n`.
    pub energy_form: f64,
    /// Spread of `((u_{n+1} − u_n cos Δ) / sin Δ)² + u_n²`.
    pub amplitude_form: f64,
}

impl RadialResiduals {
    pub fn max(&self) -> f64 {
        self.oscillator.max(self.energy_form).max(self.amplitude_form)
    }
}

/// Left side of the energy form of the radial oscillator for `(u_n, u_{n+1})`.
pub(crate) fn energy_form(u: f64, u_next: f64, scheme: &SchemeParams) -> f64 {
    let q = (u_next - u) / (2.0 * scheme.delta().sin());
    q * q + u_next * u
}

/// Left side of the amplitude form of the radial oscillator for `(u_n, u_{n+1})`.
pub(crate) fn amplitude_form(u: f64, u_next: f64, scheme: &SchemeParams) -> f64 {
    let (sin, cos) = scheme.cap_delta().sin_cos();
    let q = (u_next - u * cos) / sin;
    q * q + u * u
}

/// Checks that `u_seq` obeys the exact discrete oscillator with step `Δ` and
/// that both quadratic forms of its energy stay constant. Residuals are absolute.
pub fn radial_oscillator_check(u_seq: &[f64], scheme: &SchemeParams) -> Result<RadialResiduals> {
    if u_seq.len() < 3 {
        return Err(KeplerError::InvalidArgument(format!(
            "need at least 3 values of u, got {}",
            u_seq.len()
        )));
    }
    let four_sin2 = {
        let s = 2.0 * scheme.delta().sin();
        s * s
    };
    let oscillator = u_seq
        .windows(3)
        .map(|w| ((w[2] - 2.0 * w[1] + w[0]) / four_sin2 + w[1]).abs())
        .fold(0.0, f64::max);
    let spread = |form: fn(f64, f64, &SchemeParams) -> f64| {
        let first = form(u_seq[0], u_seq[1], scheme);
        u_seq
            .windows(2)
            .map(|w| (form(w[0], w[1], scheme) - first).abs())
            .fold(0.0, f64::max)
    };
    Ok(RadialResiduals {
        oscillator,
        energy_form: spread(energy_form),
        amplitude_form: spread(amplitude_form),
    })
}

/// Discrete constants an exactness-seeded trajectory must carry:
/// `𝓛 = L sqrt(α cos δ)`, `𝓔 = E cos δ / α − m k² sin²δ / (2 α L² cos δ)`,
/// `𝓟 = p cos δ`, `ε = e cos δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactnessTargets {
    pub cal_l: f64,
    pub cal_e: f64,
    pub cal_p: f64,
    pub eps: f64,
}

pub fn exactness_targets(conic: &ConicElements, scheme: &SchemeParams, phys: &PhysicalParams) -> ExactnessTargets {
    let (m, k, alpha) = (phys.m(), phys.k(), scheme.alpha());
    let (sin_d, cos_d) = scheme.delta().sin_cos();
    let l = (k * m * conic.p).sqrt();
    ExactnessTargets {
        cal_l: l * (alpha * cos_d).sqrt(),
        cal_e: conic.energy * cos_d / alpha - m * k * k * sin_d * sin_d / (2.0 * alpha * l * l * cos_d),
        cal_p: conic.p * cos_d,
        eps: conic.e * cos_d,
    }
}

/// Seed whose discrete trajectory lies on `conic`, starting at polar angle
/// `phi_init` and moving counterclockwise.
///
/// `r₀`, `r₁` are taken on the conic at `phi_init` and `phi_init + Δ`, and
/// `Δt₀ = α m r₀ r₁ sin Δ / 𝓛` with `𝓛 = L sqrt(α cos δ)`.
pub fn seed_from_conic(
    conic: &ConicElements,
    phi_init: f64,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
) -> Result<SeedData> {
    if conic.p.is_nan() || conic.p <= 0.0 {
        return Err(KeplerError::InvalidArgument(format!(
            "semi-latus rectum must be positive, got {}",
            conic.p
        )));
    }
    let phi1 = phi_init + scheme.cap_delta();
    let r0 = conic_radius(phi_init, conic)?;
    let r1 = conic_radius(phi1, conic)?;
    let cal_l = exactness_targets(conic, scheme, phys).cal_l;
    let dt0 = scheme.alpha() * phys.m() * r0 * r1 * scheme.cap_delta().sin() / cal_l;
    Ok(SeedData::new(
        PlanarVec::from_polar(r0, phi_init),
        PlanarVec::from_polar(r1, phi1),
        dt0,
    ))
}
