//! Exact discretization of the harmonic oscillator `ẍ = −x`.
//!
//! The three-point recurrence
//!
//! ```text
//! (x_{n+1} − 2x_n + x_{n−1}) / (4 sin²(h/2)) = −x_n
//! ```
//!
//! reproduces the continuous solution sampled at `t = nh` for every `n`.
//! The same recurrence (with `h = Δ`) governs the shifted inverse radius of
//! the discrete Kepler orbit.

use std::f64::consts::PI;

use crate::error::{KeplerError, Result};

/// Two consecutive samples of the discrete oscillator and its step `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    pub x_prev: f64,
    pub x_curr: f64,
    h: f64,
}

impl OscillatorState {
    pub fn new(x_prev: f64, x_curr: f64, h: f64) -> Result<Self> {
        check_step(h)?;
        Ok(Self { x_prev, x_curr, h })
    }

    #[inline]
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Shift the window forward by one step.
    pub fn advance(self) -> Self {
        Self {
            x_prev: self.x_curr,
            x_curr: osc_step(&self),
            h: self.h,
        }
    }
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h < PI {
        Ok(())
    } else {
        Err(KeplerError::InvalidArgument(format!(
            "oscillator step must lie in (0, pi), got {h}"
        )))
    }
}

/// `x_{n+1} = 2 cos(h) x_n − x_{n−1}`.
#[inline]
pub fn osc_step(s: &OscillatorState) -> f64 {
    2.0 * s.h.cos() * s.x_curr - s.x_prev
}

/// Closed-form solution `x_n` from the two starting samples.
pub fn osc_closed_form(x0: f64, x1: f64, h: f64, n: u64) -> Result<f64> {
    check_step(h)?;
    let (s, c) = h.sin_cos();
    let nh = n as f64 * h;
    Ok(x0 * nh.cos() + (x1 - x0 * c) / s * nh.sin())
}

/// Conserved discrete energy `((x_{n+1} − x_n) / (2 sin(h/2)))² + x_{n+1} x_n`.
pub fn osc_discrete_energy(x_curr: f64, x_next: f64, h: f64) -> f64 {
    let q = (x_next - x_curr) / (2.0 * (0.5 * h).sin());
    q * q + x_next * x_curr
}

/// Iterates the recurrence from `x(0) = x0`, `ẋ(0) = v0` and returns the largest
/// deviation from `x0 cos(nh) + v0 sin(nh)` over `n = 0..=n_steps`.
pub fn osc_exactness_deviation(x0: f64, v0: f64, h: f64, n_steps: u64) -> Result<f64> {
    let samples = osc_trajectory(x0, v0, h, n_steps)?;
    Ok(samples
        .iter()
        .enumerate()
        .map(|(n, &x)| {
            let nh = n as f64 * h;
            (x - (x0 * nh.cos() + v0 * nh.sin())).abs()
        })
        .fold(0.0, f64::max))
}

/// Samples `x_0..=x_{n_steps}` of the discrete oscillator started from `(x0, v0)`.
pub fn osc_trajectory(x0: f64, v0: f64, h: f64, n_steps: u64) -> Result<Vec<f64>> {
    check_step(h)?;
    let x1 = x0 * h.cos() + v0 * h.sin();
    let mut out = Vec::with_capacity(n_steps as usize + 1);
    out.push(x0);
    if n_steps == 0 {
        return Ok(out);
    }
    let mut state = OscillatorState::new(x0, x1, h)?;
    out.push(x1);
    for _ in 1..n_steps {
        state = state.advance();
        out.push(state.x_curr);
    }
    Ok(out)
}
