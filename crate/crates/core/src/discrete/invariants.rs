use serde::{Deserialize, Serialize};

use crate::params::{PhysicalParams, SchemeParams};
use crate::planar::PlanarVec;

/// Conserved quantities of the discrete scheme at step `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantSet {
    /// Out-of-plane component of the discrete angular momentum.
    pub l_z: f64,
    pub energy: f64,
    pub runge_lenz: PlanarVec,
}

/// Point midway between the tips of `r_n` and `r_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectorPoint {
    pub r_vec: PlanarVec,
    pub r: f64,
}

/// `R_n = (r_{n+1} r_n + r_n r_{n+1}) / (r_n + r_{n+1})`, weighting each vector by the other's length.
///
/// Its direction bisects the angle between the two points, and for opening
/// angle `2δ` its length is `2 r_n r_{n+1} cos δ / (r_n + r_{n+1})`.
pub fn bisector_point(r_n: PlanarVec, r_next: PlanarVec) -> BisectorPoint {
    let (a, b) = (r_n.norm(), r_next.norm());
    let r_vec = (r_n * b + r_next * a) / (a + b);
    BisectorPoint { r_vec, r: r_vec.norm() }
}

/// `α m (r_n × r_{n+1}) / Δt_n`, the angular momentum without going through `R_n` and `p_n`.
pub fn angular_momentum_direct(
    r_n: PlanarVec,
    r_next: PlanarVec,
    dt_n: f64,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
) -> f64 {
    scheme.alpha() * phys.m() * r_n.cross(r_next) / dt_n
}

/// Discrete angular momentum, energy and Runge–Lenz vector of the pair `(r_n, r_{n+1})`.
///
/// ```text
/// p_n = m (r_{n+1} − r_n) / Δt_n
/// L_n = α R_n × p_n
/// E_n = p_n² / 2m − k / (α R_n)
/// A_n = p_n × L_n / m − k R_n / |R_n|
/// ```
pub fn invariants_at(
    r_n: PlanarVec,
    r_next: PlanarVec,
    dt_n: f64,
    scheme: &SchemeParams,
    phys: &PhysicalParams,
) -> InvariantSet {
    let (m, k, alpha) = (phys.m(), phys.k(), scheme.alpha());
    let momentum = (r_next - r_n) * (m / dt_n);
    let bisector = bisector_point(r_n, r_next);
    let l_z = alpha * bisector.r_vec.cross(momentum);
    let energy = momentum.norm_squared() / (2.0 * m) - k / (alpha * bisector.r);
    let runge_lenz = momentum.cross_z(l_z) / m - bisector.r_vec * (k / bisector.r);
    InvariantSet {
        l_z,
        energy,
        runge_lenz,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn pair(r_a: f64, r_b: f64, phi: f64, delta: f64) -> (PlanarVec, PlanarVec) {
        (
            PlanarVec::from_polar(r_a, phi),
            PlanarVec::from_polar(r_b, phi + 2.0 * delta),
        )
    }

    #[test]
    fn circular_seed_invariants() {
        // exactness map: 𝓛 = sqrt(cos δ), 𝓔 = −cos δ/2 − sin²δ/(2 cos δ), values from mpmath
        let scheme = SchemeParams::new(1.0, PI / 6.0).unwrap();
        let phys = PhysicalParams::unit();
        let (a, b) = pair(1.0, 1.0, 0.0, PI / 6.0);
        let inv = invariants_at(a, b, 0.930_604_859_102_099_6, &scheme, &phys);
        assert!((inv.l_z - 0.930_604_859_102_099_6).abs() < 1e-15);
        assert!((inv.energy + 0.577_350_269_189_625_8).abs() < 1e-15);
        assert!(inv.runge_lenz.norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn bisector_geometry(r_a in 0.1..10.0f64, r_b in 0.1..10.0f64, phi in -PI..PI, delta in 0.01..0.78f64) {
            let (a, b) = pair(r_a, r_b, phi, delta);
            let bis = bisector_point(a, b);
            prop_assert!((bis.r - bis.r_vec.norm()).abs() <= 1e-14 * bis.r);
            let closed = 2.0 * r_a * r_b * delta.cos() / (r_a + r_b);
            prop_assert!((bis.r - closed).abs() <= 1e-13 * closed);
            // equal angles to both generating vectors
            let to_a = bis.r_vec.cross(a).abs().atan2(bis.r_vec.dot(a));
            let to_b = bis.r_vec.cross(b).abs().atan2(bis.r_vec.dot(b));
            prop_assert!((to_a - to_b).abs() <= 1e-12);
            // the tip is the midpoint of the chord's weighted ends
            let mid = (a * r_b + b * r_a) / (r_a + r_b);
            prop_assert!((mid - bis.r_vec).norm() <= 1e-14 * closed);
        }

        #[test]
        fn bisector_and_direct_angular_momentum_agree(
            r_a in 0.1..10.0f64, r_b in 0.1..10.0f64, phi in -PI..PI, delta in 0.01..0.78f64,
            dt in 0.01..5.0f64, alpha in 0.5..2.0f64, cw in any::<bool>(),
        ) {
            let scheme = SchemeParams::new(alpha, delta).unwrap();
            let phys = PhysicalParams::new(1.3, 0.7).unwrap();
            let d = if cw { -delta } else { delta };
            let (a, b) = pair(r_a, r_b, phi, d);
            let inv = invariants_at(a, b, dt, &scheme, &phys);
            let direct = angular_momentum_direct(a, b, dt, &scheme, &phys);
            prop_assert!((inv.l_z - direct).abs() <= 1e-12 * direct.abs());
            prop_assert_eq!(inv.l_z > 0.0, !cw);
        }

        #[test]
        fn rotational_covariance(
            r_a in 0.1..10.0f64, r_b in 0.1..10.0f64, delta in 0.01..0.78f64, dt in 0.01..5.0f64, theta in -PI..PI,
        ) {
            let scheme = SchemeParams::new(1.0, delta).unwrap();
            let phys = PhysicalParams::unit();
            let (a, b) = pair(r_a, r_b, 0.0, delta);
            let base = invariants_at(a, b, dt, &scheme, &phys);
            let rot = invariants_at(a.rotate(theta), b.rotate(theta), dt, &scheme, &phys);
            let scale = base.energy.abs().max(1.0);
            prop_assert!((base.energy - rot.energy).abs() <= 1e-12 * scale);
            prop_assert!((base.l_z - rot.l_z).abs() <= 1e-12 * base.l_z.abs());
            let a_scale = base.runge_lenz.norm().max(1.0);
            prop_assert!((base.runge_lenz.rotate(theta) - rot.runge_lenz).norm() <= 1e-12 * a_scale);
        }
    }
}
