use std::f64::consts::PI;

use exact_kepler::conic::{conic_radius, ConicElements};
use exact_kepler::discrete::{exactness_targets, run_trajectory, seed_from_conic, Trajectory};
use exact_kepler::{PhysicalParams, PlanarVec, SchemeParams, SeedData};
use proptest::prelude::*;

fn unit() -> PhysicalParams {
    PhysicalParams::unit()
}

fn conic_run(
    p: f64,
    e: f64,
    delta: f64,
    alpha: f64,
    phys: &PhysicalParams,
    n: usize,
) -> (ConicElements, SchemeParams, Trajectory) {
    let conic = ConicElements::from_shape(p, e, 0.3, phys).unwrap();
    let scheme = SchemeParams::new(alpha, delta).unwrap();
    let seed = seed_from_conic(&conic, 0.3, &scheme, phys).unwrap();
    (conic, scheme, run_trajectory(&seed, &scheme, phys, n).unwrap())
}

#[test]
fn discrete_constants_match_exactness_targets() {
    let phys = PhysicalParams::new(2.0, 0.7).unwrap();
    for e in [0.0, 0.4, 0.95] {
        let (conic, scheme, traj) = conic_run(1.3, e, PI / 10.0, 1.7, &phys, 2_000);
        let target = exactness_targets(&conic, &scheme, &phys);
        let inv = traj.samples[0].inv.unwrap();
        assert!((inv.l_z - target.cal_l).abs() <= 1e-12 * target.cal_l);
        assert!((inv.energy - target.cal_e).abs() <= 1e-12 * target.cal_e.abs().max(1.0));
        assert!((traj.params.cal_p - target.cal_p).abs() <= 1e-12 * target.cal_p);
        assert!((traj.params.eps - target.eps).abs() <= 1e-12);
        for s in &traj.samples {
            let on_conic = conic_radius(s.phi, &conic).unwrap();
            assert!((s.radius - on_conic).abs() <= 1e-10 * on_conic);
        }
    }
}

#[test]
fn high_eccentricity_long_run_stays_closed() {
    let (_, _, traj) = conic_run(1.0, 0.9, PI / 36.0, 1.0, &unit(), 72 * 500);
    assert!(traj.termination.is_none());
    let d = traj.drift();
    assert!(
        d.max_drift_l <= 1e-11 && d.max_drift_e <= 1e-10 && d.max_drift_a <= 1e-10,
        "{d:?}"
    );
    let first = traj.samples[0].r;
    let last = traj.samples.last().unwrap().r;
    assert!((first - last).norm() <= 1e-9 * first.norm());
}

#[test]
fn clockwise_seed_conserves_negative_angular_momentum() {
    let scheme = SchemeParams::new(1.0, PI / 15.0).unwrap();
    let seed = SeedData::new(
        PlanarVec::new(1.0, 0.0),
        PlanarVec::from_polar(0.9, -2.0 * PI / 15.0),
        0.2,
    );
    let traj = run_trajectory(&seed, &scheme, &unit(), 5_000).unwrap();
    assert!(traj.samples[0].inv.unwrap().l_z < 0.0);
    assert!(traj.drift().max_drift_l <= 1e-11);
    assert!(traj.max_orbit_residual() <= 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_raw_seeds_conserve_and_stay_on_orbit(
        r0 in 0.2..5.0f64, r1 in 0.2..5.0f64, dt0 in 0.01..2.0f64, delta in 0.05..0.7f64, phi in -PI..PI,
        m in 0.5..2.0f64, k in 0.5..2.0f64, alpha in 0.5..2.0f64,
    ) {
        let phys = PhysicalParams::new(m, k).unwrap();
        let scheme = SchemeParams::new(alpha, delta).unwrap();
        let seed = SeedData::from_first_point(PlanarVec::from_polar(r0, phi), r1, dt0, &scheme).unwrap();
        let traj = run_trajectory(&seed, &scheme, &phys, 1_000).unwrap();
        prop_assert!(traj.max_orbit_residual() <= 1e-10);
        let d = traj.drift();
        prop_assert!(d.max_drift_l <= 1e-11, "{:?}", d);
        if let Some(t) = &traj.termination {
            prop_assert!(t.is_escape(), "{}", t.error);
        }
    }
}
