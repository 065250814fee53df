use serde::{Deserialize, Serialize};

use crate::error::{KeplerError, Result};
use crate::params::{validate_seed, PhysicalParams, SchemeParams, SeedData};
use crate::planar::{angle_between, PlanarVec};

/// Per-step tolerance on the opening angle of the vector-form update.
const STEP_ANGLE_TOL: f64 = 1e-10;
/// Per-step relative tolerance on `r_{n+1} Δt_{n−1} = r_{n−1} Δt_n` for the vector-form update.
const STEP_RADIUS_TOL: f64 = 1e-10;

/// Which time-step recursion to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TimestepRule {
    /// `2 cos Δ` in the recursion, with `Δ = 2δ` the step angle.
    #[default]
    FullAngle,
    /// `2 cos δ` in place of `2 cos Δ`. Does not conserve the discrete
    /// energy; kept to demonstrate exactly that.
    HalfAngle,
}

/// Rolling window `(r_{n−1}, r_n, Δt_{n−1})` of the discrete stepper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteState {
    n: usize,
    r_prev: PlanarVec,
    r_curr: PlanarVec,
    dt_prev: f64,
    t_curr: f64,
    seed_const: f64,
    orientation: f64,
}

impl DiscreteState {
    /// State at `n = 1` built from a validated seed.
    ///
    /// Freezes `k Δt₀² / (m r₁² r₀² α cos δ)`, the constant of the time-step recursion.
    pub fn from_seed(seed: &SeedData, scheme: &SchemeParams, phys: &PhysicalParams) -> Result<Self> {
        validate_seed(seed, scheme)?;
        let (r0, r1) = (seed.r0.norm(), seed.r1.norm());
        let seed_const =
            phys.k() * seed.dt0 * seed.dt0 / (phys.m() * r1 * r1 * r0 * r0 * scheme.alpha() * scheme.delta().cos());
        Ok(Self {
            n: 1,
            r_prev: seed.r0,
            r_curr: seed.r1,
            dt_prev: seed.dt0,
            t_curr: seed.dt0,
            seed_const,
            orientation: seed.orientation(),
        })
    }

    /// Index of the current point `r_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r_prev(&self) -> PlanarVec {
        self.r_prev
    }

    pub fn r_curr(&self) -> PlanarVec {
        self.r_curr
    }

    /// `Δt_{n−1}`.
    pub fn dt_prev(&self) -> f64 {
        self.dt_prev
    }

    /// Accumulated time `t_n` (with `t₀ = 0`).
    pub fn t_curr(&self) -> f64 {
        self.t_curr
    }

    pub fn seed_const(&self) -> f64 {
        self.seed_const
    }

    /// +1 for counterclockwise motion, −1 for clockwise.
    pub fn orientation(&self) -> f64 {
        self.orientation
    }
}

/// `Δt_n` from the full-angle time-step recursion.
pub fn timestep_next(state: &DiscreteState, scheme: &SchemeParams) -> Result<f64> {
    timestep_next_with(state, scheme, TimestepRule::FullAngle)
}

/// `Δt_n = Δt_{n−1} / (2 cos Δ · r_{n−1}/r_n − 1 + C r_{n−1})` with `C` the frozen seed constant.
///
/// A nonpositive denominator means `r_{n+1}` would fall past the asymptote of
/// the discrete orbit; it is reported as [`KeplerError::Escape`].
pub fn timestep_next_with(state: &DiscreteState, scheme: &SchemeParams, rule: TimestepRule) -> Result<f64> {
    let r_prev = state.r_prev.norm();
    let r_curr = state.r_curr.norm();
    let twice_cos = match rule {
        TimestepRule::FullAngle => 2.0 * scheme.cap_delta().cos(),
        TimestepRule::HalfAngle => 2.0 * scheme.delta().cos(),
    };
    let denominator = twice_cos * (r_prev / r_curr) - 1.0 + state.seed_const * r_prev;
    let dt = state.dt_prev / denominator;
    if denominator > 0.0 && dt.is_finite() {
        Ok(dt)
    } else {
        Err(KeplerError::Escape {
            n: state.n,
            denominator,
        })
    }
}

/// `r_{n+1}` from the three-point form of the scheme:
/// `r_{n+1} = Δt_n (B r_n − r_{n−1}/Δt_{n−1})` with
/// `B = 1/Δt_n + 1/Δt_{n−1} − k Δt_{n−1} / (α m r_n² r_{n−1} cos δ)`.
///
/// Checks that the new point opens the angle `Δ` with `r_n` and satisfies
/// `r_{n+1} Δt_{n−1} = r_{n−1} Δt_n`.
pub fn position_next(
    state: &DiscreteState,
    dt_n: f64,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
) -> Result<PlanarVec> {
    let next = three_point_update(state, dt_n, scheme, phys)?;
    let n = state.n;
    let angle = angle_between(state.r_curr, next)?;
    if (angle - scheme.cap_delta()).abs() > STEP_ANGLE_TOL {
        return Err(KeplerError::Degenerate {
            n,
            reason: format!("step angle {angle:e} drifted from {:e}", scheme.cap_delta()),
        });
    }
    let lhs = next.norm() * state.dt_prev;
    let rhs = state.r_prev.norm() * dt_n;
    if (lhs - rhs).abs() > STEP_RADIUS_TOL * rhs {
        return Err(KeplerError::Degenerate {
            n,
            reason: format!("radius identity violated: {lhs:e} vs {rhs:e}"),
        });
    }
    Ok(next)
}

fn three_point_update(
    state: &DiscreteState,
    dt_n: f64,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
) -> Result<PlanarVec> {
    if !(dt_n > 0.0 && dt_n.is_finite()) {
        return Err(KeplerError::Degenerate {
            n: state.n,
            reason: format!("time step {dt_n} is not positive"),
        });
    }
    let r_prev = state.r_prev.norm();
    let r_curr = state.r_curr.norm();
    let b = 1.0 / dt_n + 1.0 / state.dt_prev
        - phys.k() * state.dt_prev / (scheme.alpha() * phys.m() * r_curr * r_curr * r_prev * scheme.delta().cos());
    let next = (state.r_curr * b - state.r_prev / state.dt_prev) * dt_n;
    let radius = next.norm();
    if radius > 0.0 && radius.is_finite() {
        Ok(next)
    } else {
        Err(KeplerError::Degenerate {
            n: state.n,
            reason: format!("new radius {radius} is not positive"),
        })
    }
}

/// `r_{n+1}` with radius `r_{n−1} Δt_n / Δt_{n−1}` and direction `r̂_n` rotated by `±Δ`.
///
/// Agrees with [`position_next`] on the constant-angle manifold and stays on it
/// exactly, so round-off cannot push the lattice off its constant opening angle.
pub fn position_next_rotation(state: &DiscreteState, dt_n: f64, scheme: &SchemeParams) -> Result<PlanarVec> {
    let radius = state.r_prev.norm() * dt_n / state.dt_prev;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(KeplerError::Degenerate {
            n: state.n,
            reason: format!("new radius {radius} is not positive"),
        });
    }
    let (sin, cos) = scheme.cap_delta().sin_cos();
    let direction = state.r_curr.unit()?.rotate_cs(cos, state.orientation * sin);
    Ok(direction * radius)
}

/// One step of the full-angle scheme.
pub fn step(state: &DiscreteState, scheme: &SchemeParams, phys: &PhysicalParams) -> Result<DiscreteState> {
    step_with(state, scheme, phys, TimestepRule::FullAngle)
}

/// Advances the window by one point.
///
/// Under the full-angle rule the three-point update is computed and checked,
/// and the rotation form is committed; they agree to round-off per step, but
/// the three-point form alone lets the opening angle drift unstably over long
/// eccentric runs. The half-angle rule commits the unchecked three-point update.
pub fn step_with(
    state: &DiscreteState,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
    rule: TimestepRule,
) -> Result<DiscreteState> {
    let dt_n = timestep_next_with(state, scheme, rule)?;
    let next = match rule {
        TimestepRule::FullAngle => {
            let vector = position_next(state, dt_n, scheme, phys)?;
            let rotated = position_next_rotation(state, dt_n, scheme)?;
            let gap = (vector - rotated).norm() / rotated.norm();
            if gap > STEP_RADIUS_TOL {
                return Err(KeplerError::Degenerate {
                    n: state.n,
                    reason: format!("vector and rotation updates disagree by {gap:e}"),
                });
            }
            rotated
        }
        TimestepRule::HalfAngle => three_point_update(state, dt_n, scheme, phys)?,
    };
    Ok(DiscreteState {
        n: state.n + 1,
        r_prev: state.r_curr,
        r_curr: next,
        dt_prev: dt_n,
        t_curr: state.t_curr + dt_n,
        seed_const: state.seed_const,
        orientation: state.orientation,
    })
}
