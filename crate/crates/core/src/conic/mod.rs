//! Continuous Kepler orbits: conic geometry, the classical integrals and
//! time of flight along the orbit.
//!
//! Every bound or unbound trajectory of `ṗ = −k r / r³` is the conic
//! `r = p / (1 + e cos(φ − φ₀))` with `p = L²/(km)` and
//! `e = sqrt(1 + 2EL²/(mk²))`. The discrete stepper is validated against
//! these curves.

pub mod anomaly;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{KeplerError, Result};
use crate::params::PhysicalParams;
use crate::planar::PlanarVec;

/// Eccentricities within this distance of 1 use the parabolic-band series.
pub const NEAR_PARABOLIC_BAND: f64 = 1e-8;

/// Continuous orbit elements in the orbital plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicElements {
    /// Semi-latus rectum.
    pub p: f64,
    /// Eccentricity.
    pub e: f64,
    /// Polar angle of perihelion (direction of the Runge–Lenz vector).
    pub phi0: f64,
    pub energy: f64,
    /// Angular momentum magnitude.
    pub angular_momentum: f64,
    /// `p / (1 − e²)`; negative for hyperbolae, absent for the parabola.
    pub semi_major_axis: Option<f64>,
    /// Present for bound orbits only.
    pub period: Option<f64>,
}

impl ConicElements {
    /// Elements of the conic with the given shape, orbiting with `phys`.
    pub fn from_shape(p: f64, e: f64, phi0: f64, phys: &PhysicalParams) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(KeplerError::InvalidArgument(format!(
                "semi-latus rectum must be positive, got {p}"
            )));
        }
        if !(e.is_finite() && e >= 0.0) {
            return Err(KeplerError::InvalidArgument(format!(
                "eccentricity must be non-negative, got {e}"
            )));
        }
        if !phi0.is_finite() {
            return Err(KeplerError::InvalidArgument("perihelion angle must be finite".into()));
        }
        let (m, k) = (phys.m(), phys.k());
        let angular_momentum = (k * m * p).sqrt();
        let energy = k * (e * e - 1.0) / (2.0 * p);
        let semi_major_axis = (e != 1.0).then(|| p / (1.0 - e * e));
        let period = semi_major_axis
            .filter(|_| e < 1.0)
            .map(|a| 2.0 * PI * (m * a * a * a / k).sqrt());
        Ok(Self {
            p,
            e,
            phi0,
            energy,
            angular_momentum,
            semi_major_axis,
            period,
        })
    }

    pub fn is_bound(&self) -> bool {
        self.e < 1.0
    }

    /// `1 + e cos(φ − φ₀)`; positive exactly on the branch the orbit visits.
    #[inline]
    pub fn denominator(&self, phi: f64) -> f64 {
        1.0 + self.e * (phi - self.phi0).cos()
    }

    /// Runge–Lenz vector `k e (cos φ₀, sin φ₀)`.
    pub fn runge_lenz(&self, phys: &PhysicalParams) -> PlanarVec {
        PlanarVec::from_polar(phys.k() * self.e, self.phi0)
    }
}

/// `r(φ) = p / (1 + e cos(φ − φ₀))`.
pub fn conic_radius(phi: f64, conic: &ConicElements) -> Result<f64> {
    let denom = conic.denominator(phi);
    if denom > 0.0 {
        Ok(conic.p / denom)
    } else {
        Err(KeplerError::Domain(format!(
            "angle {phi} lies outside the branch of the e = {} conic",
            conic.e
        )))
    }
}

/// Position and velocity at polar angle `phi` for counterclockwise motion.
pub fn state_on_conic(conic: &ConicElements, phi: f64, phys: &PhysicalParams) -> Result<(PlanarVec, PlanarVec)> {
    let r = conic_radius(phi, conic)?;
    let mu = phys.k() / phys.m();
    let h = conic.angular_momentum / phys.m();
    let f = phi - conic.phi0;
    let v_radial = mu / h * conic.e * f.sin();
    let v_transverse = mu / h * (1.0 + conic.e * f.cos());
    let radial = PlanarVec::from_polar(1.0, phi);
    let transverse = PlanarVec::from_polar(1.0, phi + 0.5 * PI);
    Ok((radial * r, radial * v_radial + transverse * v_transverse))
}

/// Angular momentum `m (r × v)`, energy and Runge–Lenz vector of a phase-space state.
pub fn integrals_of_state(r: PlanarVec, v: PlanarVec, phys: &PhysicalParams) -> (f64, f64, PlanarVec) {
    let (m, k) = (phys.m(), phys.k());
    let radius = r.norm();
    let lz = m * r.cross(v);
    let energy = 0.5 * m * v.norm_squared() - k / radius;
    let momentum = v * m;
    let runge_lenz = momentum.cross_z(lz) / m - r * (k / radius);
    (lz, energy, runge_lenz)
}

/// Conic elements of the orbit through `(r, v)`.
pub fn elements_from_state(r: PlanarVec, v: PlanarVec, phys: &PhysicalParams) -> Result<ConicElements> {
    if !(r.is_finite() && v.is_finite()) {
        return Err(KeplerError::InvalidArgument("state contains non-finite values".into()));
    }
    if r.norm() == 0.0 {
        return Err(KeplerError::ZeroRadius);
    }
    let (m, k) = (phys.m(), phys.k());
    let (lz, energy, runge_lenz) = integrals_of_state(r, v, phys);
    if lz == 0.0 {
        return Err(KeplerError::RadialOrbit);
    }
    let p = lz * lz / (k * m);
    let mut e = runge_lenz.norm() / k;
    if (e - 1.0).abs() <= 1e-12 {
        e = 1.0;
    }
    let phi0 = if e < 1e-13 { 0.0 } else { runge_lenz.angle() };
    let semi_major_axis = (e != 1.0).then(|| p / (1.0 - e * e));
    let period = semi_major_axis
        .filter(|_| e < 1.0)
        .map(|a| 2.0 * PI * (m * a * a * a / k).sqrt());
    Ok(ConicElements {
        p,
        e,
        phi0,
        energy,
        angular_momentum: lz.abs(),
        semi_major_axis,
        period,
    })
}

/// Orbital period `2π sqrt(m a³ / k)`.
pub fn period(conic: &ConicElements, phys: &PhysicalParams) -> Result<f64> {
    if conic.e >= 1.0 {
        return Err(KeplerError::Domain(format!("e = {} orbit has no period", conic.e)));
    }
    let a = conic.p / (1.0 - conic.e * conic.e);
    Ok(2.0 * PI * (phys.m() * a * a * a / phys.k()).sqrt())
}

fn wrap_pi(angle: f64) -> f64 {
    angle - 2.0 * PI * ((angle + PI) / (2.0 * PI)).floor()
}

/// `sqrt(m p³ / k)`, the natural time unit of the conic.
fn time_scale(conic: &ConicElements, phys: &PhysicalParams) -> f64 {
    (phys.m() * conic.p.powi(3) / phys.k()).sqrt()
}

/// Time from perihelion as a power series in `D = tan(f/2)` around the parabola.
///
/// `t = sqrt(mp³/k) · 2/(1+e)² · Σ_j (j+1)(−β)^j [D^{2j+1}/(2j+1) + D^{2j+3}/(2j+3)]`
/// with `β = (1−e)/(1+e)`; exact (one term) for `e = 1`, convergent while `|β| D² < 1`.
fn near_parabolic_time(d: f64, conic: &ConicElements, phys: &PhysicalParams) -> Option<f64> {
    let e = conic.e;
    let beta = (1.0 - e) / (1.0 + e);
    let d2 = d * d;
    if beta.abs() * d2 >= 0.5 {
        return None;
    }
    let mut sum = 0.0;
    let mut power = d; // D^{2j+1}
    let mut coeff = 1.0; // (−β)^j
    for j in 0..60 {
        let jf = j as f64;
        let term = (jf + 1.0) * coeff * (power / (2.0 * jf + 1.0) + power * d2 / (2.0 * jf + 3.0));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || coeff == 0.0 {
            break;
        }
        coeff *= -beta;
        power *= d2;
    }
    Some(time_scale(conic, phys) * 2.0 / ((1.0 + e) * (1.0 + e)) * sum)
}

/// `dt/dD` of the near-parabolic series, valid for every eccentricity.
fn near_parabolic_rate(d: f64, conic: &ConicElements, phys: &PhysicalParams) -> f64 {
    let e = conic.e;
    let q = (1.0 + e) + (1.0 - e) * d * d;
    time_scale(conic, phys) * 2.0 * (1.0 + d * d) / (q * q)
}

/// Time since perihelion at true anomaly `f ∈ [−π, π]`.
fn time_since_perihelion(f: f64, conic: &ConicElements, phys: &PhysicalParams) -> Result<f64> {
    let e = conic.e;
    if (e - 1.0).abs() < NEAR_PARABOLIC_BAND {
        if let Some(t) = near_parabolic_time((0.5 * f).tan(), conic, phys) {
            return Ok(t);
        }
    }
    if e < 1.0 {
        let a = conic.p / (1.0 - e * e);
        let mean_motion = (phys.k() / (phys.m() * a * a * a)).sqrt();
        let ecc = anomaly::eccentric_from_true(f, e);
        Ok(anomaly::mean_from_eccentric(ecc, e) / mean_motion)
    } else if e > 1.0 {
        let a = conic.p / (e * e - 1.0);
        let mean_motion = (phys.k() / (phys.m() * a * a * a)).sqrt();
        let h = anomaly::hyperbolic_from_true(f, e);
        Ok(anomaly::mean_from_hyperbolic(h, e) / mean_motion)
    } else {
        Err(KeplerError::Domain(format!(
            "true anomaly {f} is at the parabola's asymptote"
        )))
    }
}

/// Time since perihelion with full revolutions unwrapped (bound orbits) or the
/// branch checked (unbound orbits).
fn unwrapped_time(phi: f64, conic: &ConicElements, phys: &PhysicalParams) -> Result<f64> {
    let f = phi - conic.phi0;
    if conic.e < 1.0 {
        let turns = ((f + PI) / (2.0 * PI)).floor();
        let reduced = f - 2.0 * PI * turns;
        let t = time_since_perihelion(reduced, conic, phys)?;
        Ok(if turns == 0.0 {
            t
        } else {
            turns * period(conic, phys)? + t
        })
    } else {
        if conic.denominator(phi) <= 0.0 {
            return Err(KeplerError::Domain(format!(
                "angle {phi} lies outside the branch of the e = {} conic",
                conic.e
            )));
        }
        time_since_perihelion(wrap_pi(f), conic, phys)
    }
}

/// Time to travel from polar angle `phi_a` to `phi_b ≥ phi_a` along the conic.
pub fn time_of_flight(conic: &ConicElements, phi_a: f64, phi_b: f64, phys: &PhysicalParams) -> Result<f64> {
    if phi_b < phi_a {
        return Err(KeplerError::InvalidArgument(format!(
            "phi_b = {phi_b} precedes phi_a = {phi_a}"
        )));
    }
    if phi_a == phi_b {
        return Ok(0.0);
    }
    let t = unwrapped_time(phi_b, conic, phys)? - unwrapped_time(phi_a, conic, phys)?;
    if t < 0.0 {
        return Err(KeplerError::Domain(format!(
            "angles {phi_a} and {phi_b} are not joined by forward motion on the e = {} branch",
            conic.e
        )));
    }
    Ok(t)
}

/// Polar angle reached `dt` after passing `phi_a` (inverse of [`time_of_flight`]).
pub fn true_anomaly_at_time(conic: &ConicElements, phi_a: f64, dt: f64, phys: &PhysicalParams) -> Result<f64> {
    let target = unwrapped_time(phi_a, conic, phys)? + dt;
    let e = conic.e;
    let f = if (e - 1.0).abs() < NEAR_PARABOLIC_BAND && near_parabolic_time(1.0, conic, phys).is_some() {
        let mut hi = 1.0f64;
        let sign = if target >= 0.0 { 1.0 } else { -1.0 };
        while near_parabolic_time(sign * hi, conic, phys).is_some_and(|t| t * sign < target * sign) {
            hi *= 2.0;
        }
        let (lo, hi) = if sign > 0.0 { (0.0, hi) } else { (-hi, 0.0) };
        let d = anomaly::newton_bisect(
            "near-parabolic time equation",
            |d| {
                let t = near_parabolic_time(d, conic, phys).unwrap_or(f64::NAN);
                (t - target, near_parabolic_rate(d, conic, phys))
            },
            lo,
            hi,
            0.5 * (lo + hi),
        )?;
        2.0 * d.atan()
    } else if e < 1.0 {
        let a = conic.p / (1.0 - e * e);
        let mean_motion = (phys.k() / (phys.m() * a * a * a)).sqrt();
        let ecc = anomaly::eccentric_from_mean(target * mean_motion, e)?;
        let turns = ((ecc + PI) / (2.0 * PI)).floor();
        anomaly::true_from_eccentric(ecc - 2.0 * PI * turns, e) + 2.0 * PI * turns
    } else {
        let a = conic.p / (e * e - 1.0);
        let mean_motion = (phys.k() / (phys.m() * a * a * a)).sqrt();
        let h = anomaly::hyperbolic_from_mean(target * mean_motion, e)?;
        anomaly::true_from_hyperbolic(h, e)
    };
    let f_a = phi_a - conic.phi0;
    // keep the result on the same unwrapped sheet as phi_a for unbound orbits
    let base = if e < 1.0 { conic.phi0 } else { phi_a - wrap_pi(f_a) };
    Ok(base + f)
}
