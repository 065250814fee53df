//! Discrete Kepler problem whose lattice points lie exactly on a conic.
//!
//! The integrator advances with a constant polar step `2δ` and adapts the time
//! step so that angular momentum, energy and the Runge–Lenz vector of the
//! discrete system are conserved to round-off. An exact discrete harmonic
//! oscillator, an analytic conic oracle, and classical integrators for
//! comparison live alongside it.

pub mod baseline;
pub mod cli;
pub mod compare;
pub mod conic;
pub mod discrete;
pub mod error;
pub mod oscillator;
pub mod params;
pub mod planar;

pub use error::{KeplerError, Result};
pub use params::{validate_seed, PhysicalParams, SchemeParams, SeedData};
pub use planar::{angle_between, PlanarVec};
