//! The orbit-preserving discrete Kepler problem.
//!
//! Points `r_n` advance by a constant polar angle `Δ = 2δ` per step on a
//! variable time lattice `t_n`. With `p_n = m Δr_n / Δt_n`, the scheme
//!
//! ```text
//! Δp_n / Δt_n = −k r_{n+1} / (α r_{n+1}² r_n cos δ)
//! ```
//!
//! conserves discrete analogues of angular momentum, energy and the
//! Runge–Lenz vector for every seed `(r₀, r₁, Δt₀)`, and its points lie
//! on the curve `r_n = 𝓟 / (cos δ + ε cos(nΔ − θ₀))`. With the seed chosen by
//! [`seed_from_conic`] those points lie exactly on the continuous conic.

mod invariants;
mod orbit;
mod period;
mod stepper;
mod trajectory;

pub use invariants::{angular_momentum_direct, bisector_point, invariants_at, BisectorPoint, InvariantSet};
pub use orbit::{
    discrete_orbit_radius, exactness_targets, orbit_params_from_seed, orbit_residual, radial_oscillator_check,
    seed_from_conic, u_transform, DiscreteOrbitParams, ExactnessTargets, RadialResiduals,
};
pub use period::{fit_alpha_for_period, fit_alpha_for_period_from, revolution_time};
pub use stepper::{
    position_next, position_next_rotation, step, step_with, timestep_next, timestep_next_with, DiscreteState,
    TimestepRule,
};
pub use trajectory::{run_trajectory, run_trajectory_with, DriftSummary, Termination, Trajectory, TrajectorySample};
