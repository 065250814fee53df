//! Choosing α so that one discrete revolution lasts one continuous period.

use crate::conic::{conic_radius, period, ConicElements};
use crate::error::{KeplerError, Result};
use crate::params::{PhysicalParams, SchemeParams};

/// α matching the discrete revolution time to the continuous period, for an
/// exactness-seeded lattice of `n_per_rev` points starting at perihelion.
pub fn fit_alpha_for_period(conic: &ConicElements, n_per_rev: usize, phys: &PhysicalParams) -> Result<f64> {
    fit_alpha_for_period_from(conic, conic.phi0, n_per_rev, phys)
}

/// Same as [`fit_alpha_for_period`] for a lattice starting at `phi_init`.
///
/// With exactness seeding the radii do not depend on α and every time step is
/// `Δt_n = sqrt(α) · 2 m sin δ sqrt(cos δ) r_n r_{n+1} / L`, so
/// `α = (T L / (2 m sin δ sqrt(cos δ) Σ r_n r_{n+1}))²`.
pub fn fit_alpha_for_period_from(
    conic: &ConicElements,
    phi_init: f64,
    n_per_rev: usize,
    phys: &PhysicalParams,
) -> Result<f64> {
    if conic.e >= 1.0 {
        return Err(KeplerError::Domain(format!(
            "e = {} orbit has no period to match",
            conic.e
        )));
    }
    // δ = π/N must stay below π/4
    let scheme = SchemeParams::with_steps_per_rev(1.0, n_per_rev)?;
    let continuous = period(conic, phys)?;
    let l = (phys.k() * phys.m() * conic.p).sqrt();
    let radii = (0..=n_per_rev)
        .map(|n| conic_radius(phi_init + n as f64 * scheme.cap_delta(), conic))
        .collect::<Result<Vec<_>>>()?;
    let products: f64 = radii.windows(2).map(|w| w[0] * w[1]).sum();
    let (sin_d, cos_d) = scheme.delta().sin_cos();
    let root = continuous * l / (2.0 * phys.m() * sin_d * cos_d.sqrt() * products);
    Ok(root * root)
}

/// Sum of the first `n_steps` time steps `Δt_0 + … + Δt_{n_steps−1}`.
pub fn revolution_time(dts: impl IntoIterator<Item = f64>, n_steps: usize) -> f64 {
    dts.into_iter().take(n_steps).sum()
}
