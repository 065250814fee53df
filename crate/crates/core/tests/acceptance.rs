//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p exact-kepler --test acceptance`. Checks listed in
//! `KNOWN_UNATTAINABLE` compare against reference numbers that do not match
//! their own closed forms; they are evaluated as written, reported as FAIL,
//! and do not fail the process. Any other failure does.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use exact_kepler::baseline::Method;
use exact_kepler::cli::report::render;
use exact_kepler::cli::run_cli;
use exact_kepler::compare::{compare, EXACT_SCHEME};
use exact_kepler::conic::{period, ConicElements};
use exact_kepler::discrete::{
    angular_momentum_direct, fit_alpha_for_period, invariants_at, radial_oscillator_check, run_trajectory,
    run_trajectory_with, seed_from_conic, TimestepRule, Trajectory,
};
use exact_kepler::oscillator::osc_exactness_deviation;
use exact_kepler::{PhysicalParams, PlanarVec, SchemeParams, SeedData};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const KNOWN_UNATTAINABLE: &[&str] = &["7a", "7c"];

struct Report {
    lines: Vec<(String, bool)>,
}

impl Report {
    fn check(&mut self, id: &str, what: &str, measured: f64, ok: bool, bound: &str) {
        let tag = if ok { "PASS" } else { "FAIL" };
        let line = format!("[{tag}] {id:<3} {what}: measured {measured:.6e} ({bound})");
        println!("{line}");
        self.lines.push((id.to_string(), ok));
    }

    fn le(&mut self, id: &str, what: &str, measured: f64, tol: f64) {
        self.check(id, what, measured, measured <= tol, &format!("<= {tol:e}"));
    }
}

fn unit() -> PhysicalParams {
    PhysicalParams::unit()
}

fn exact_run(p: f64, e: f64, delta: f64, alpha: f64, n_steps: usize) -> (ConicElements, SchemeParams, Trajectory) {
    let conic = ConicElements::from_shape(p, e, 0.0, &unit()).unwrap();
    let scheme = SchemeParams::new(alpha, delta).unwrap();
    let seed = seed_from_conic(&conic, 0.0, &scheme, &unit()).unwrap();
    let traj = run_trajectory(&seed, &scheme, &unit(), n_steps).unwrap();
    (conic, scheme, traj)
}

fn conic_residual(traj: &Trajectory, conic: &ConicElements) -> f64 {
    traj.samples
        .iter()
        .map(|s| (s.radius * conic.denominator(s.phi) - conic.p).abs() / conic.p)
        .fold(0.0, f64::max)
}

fn revolution_period(alpha: f64, conic: &ConicElements, n: usize) -> f64 {
    let scheme = SchemeParams::with_steps_per_rev(alpha, n).unwrap();
    let seed = seed_from_conic(conic, conic.phi0, &scheme, &unit()).unwrap();
    let traj = run_trajectory(&seed, &scheme, &unit(), n).unwrap();
    traj.time_steps().iter().take(n).sum()
}

fn criterion_1(r: &mut Report) {
    let mut worst = 0.0f64;
    for h in [0.01, 0.1, PI / 5.0, 1.0] {
        for x0 in [0.0, 1.0, 0.3] {
            for v0 in [0.0, -1.2] {
                worst = worst.max(osc_exactness_deviation(x0, v0, h, 10_000).unwrap());
            }
        }
    }
    r.le("1", "oscillator exactness, 24 cases x 1e4 steps", worst, 1e-9);
}

fn criteria_2_3_5(r: &mut Report) {
    let (_, scheme, traj) = exact_run(1.0, 0.6, PI / 12.0, 1.0, 100_000);
    let ran = traj.termination.is_none();
    r.check(
        "2",
        "e=0.6 run completes 1e5 steps",
        traj.samples.len() as f64,
        ran,
        "no termination",
    );
    let d = traj.drift();
    r.le("2", "relative drift of L_z", d.max_drift_l, 1e-11);
    r.le("2", "relative drift of E", d.max_drift_e, 1e-10);
    r.le("2", "relative drift of A", d.max_drift_a, 1e-10);

    r.le("3", "orbit residual, e=0.6 run", traj.max_orbit_residual(), 1e-10);
    let mut rng = StdRng::seed_from_u64(20_240_601);
    let mut worst = 0.0f64;
    let mut points = 0usize;
    for _ in 0..20 {
        let delta = rng.gen_range(0.05..0.7);
        let scheme = SchemeParams::new(1.0, delta).unwrap();
        let phi: f64 = rng.gen_range(-PI..PI);
        let seed = SeedData::from_first_point(
            PlanarVec::from_polar(rng.gen_range(0.2..5.0), phi),
            rng.gen_range(0.2..5.0),
            rng.gen_range(0.01..2.0),
            &scheme,
        )
        .unwrap();
        let t = run_trajectory(&seed, &scheme, &unit(), 2_000).unwrap();
        points += t.samples.len();
        worst = worst.max(t.max_orbit_residual());
    }
    r.le(
        "3",
        &format!("orbit residual, 20 random raw seeds ({points} points)"),
        worst,
        1e-10,
    );

    let s = &traj.samples;
    let (mut eq11, mut bis, mut law, mut l_gap) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (r0, r1, dt0) = (s[0].radius, s[1].radius, s[0].dt.unwrap());
    let cos_cap = scheme.cap_delta().cos();
    for w in s.windows(3) {
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        let (dt_prev, dt) = (a.dt.unwrap(), b.dt.unwrap());
        eq11 = eq11.max((c.radius * dt_prev - a.radius * dt).abs() / (a.radius * dt));
        let lhs = c.r / c.radius + a.r / a.radius;
        bis = bis.max((lhs - (b.r / b.radius) * (2.0 * cos_cap)).norm());
    }
    for w in s.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        let lhs = cur.radius * prev.radius * dt0;
        law = law.max((lhs - r1 * r0 * prev.dt.unwrap()).abs() / lhs);
    }
    for w in s.windows(2) {
        let dt = w[0].dt.unwrap();
        let via_bisector = invariants_at(w[0].r, w[1].r, dt, &scheme, &unit()).l_z;
        let direct = angular_momentum_direct(w[0].r, w[1].r, dt, &scheme, &unit());
        l_gap = l_gap.max((via_bisector - direct).abs() / direct.abs());
    }
    r.le("5", "radius/time-step identity, per step", eq11, 1e-12);
    r.le("5", "bisector identity with cos(2 delta), per step", bis, 1e-12);
    r.le("5", "angular-momentum time-step law", law, 1e-12);
    let radial = radial_oscillator_check(&traj.u_sequence(), &scheme).unwrap();
    r.le(
        "5",
        "energy form of radial oscillator constant",
        radial.energy_form,
        1e-11,
    );
    r.le(
        "5",
        "amplitude form of radial oscillator constant",
        radial.amplitude_form,
        1e-11,
    );
    r.le("5", "L via bisector point vs direct", l_gap, 1e-12);
}

fn criterion_4(r: &mut Report) {
    for e in [0.0, 0.3, 0.6, 0.9] {
        let (conic, _, traj) = exact_run(1.0, e, PI / 12.0, 1.0, 2_400);
        r.le(
            "4",
            &format!("conic membership, e={e}, 2400 steps"),
            conic_residual(&traj, &conic),
            1e-10,
        );
    }
    // Δ = 2π/13: no lattice point lands on the parabola's axis at φ = π.
    let (conic, _, traj) = exact_run(1.0, 1.0, PI / 13.0, 1.0, 12);
    r.le(
        "4",
        &format!("conic membership, e=1, {} points", traj.samples.len()),
        conic_residual(&traj, &conic),
        1e-10,
    );
    let (conic, _, traj) = exact_run(1.0, 1.5, PI / 12.0, 1.0, 100);
    r.check(
        "4",
        "e=1.5 run ends in an escape",
        traj.samples.len() as f64,
        traj.escaped(),
        "escape recorded",
    );
    r.le(
        "4",
        &format!("conic membership, e=1.5, {} points", traj.samples.len()),
        conic_residual(&traj, &conic),
        1e-10,
    );
}

fn criterion_6(r: &mut Report) {
    let conic = ConicElements::from_shape(1.0, 0.0, 0.0, &unit()).unwrap();
    let scheme = SchemeParams::new(1.0, PI / 6.0).unwrap();
    let seed = seed_from_conic(&conic, 0.0, &scheme, &unit()).unwrap();
    let half_angle = run_trajectory_with(&seed, &scheme, &unit(), 100, TimestepRule::HalfAngle).unwrap();
    let full_angle = run_trajectory_with(&seed, &scheme, &unit(), 100, TimestepRule::FullAngle).unwrap();
    let drift = half_angle.drift().max_drift_e;
    r.check(
        "6",
        "half-angle rule energy drift within 100 steps",
        drift,
        drift > 1e-3,
        "> 1e-3",
    );
    r.le(
        "6",
        "full-angle rule energy drift",
        full_angle.drift().max_drift_e,
        1e-12,
    );
}

fn criterion_7(r: &mut Report) {
    let circle = ConicElements::from_shape(1.0, 0.0, 0.0, &unit()).unwrap();
    let alpha6 = fit_alpha_for_period(&circle, 6, &unit()).unwrap();
    r.le(
        "7a",
        "fit alpha, circle N=6, vs reference 1.2662773",
        (alpha6 - 1.2662773).abs(),
        1e-6,
    );
    // (π/6 / (sin(π/6)·sqrt(cos(π/6))))², mpmath
    r.le(
        "7a'",
        "fit alpha, circle N=6, vs closed form 1.2662708350586792",
        (alpha6 - 1.266_270_835_058_679).abs(),
        1e-12,
    );
    let t6 = revolution_period(alpha6, &circle, 6);
    r.le(
        "7b",
        "circle re-simulated period vs 2 pi",
        (t6 - 2.0 * PI).abs() / (2.0 * PI),
        1e-10,
    );

    let ellipse = ConicElements::from_shape(1.0, 0.5, 0.0, &unit()).unwrap();
    let alpha12 = fit_alpha_for_period(&ellipse, 12, &unit()).unwrap();
    let t12 = revolution_period(alpha12, &ellipse, 12);
    r.le(
        "7c",
        "e=0.5 N=12 period vs reference 9.6736602",
        (t12 - 9.6736602).abs() / 9.6736602,
        1e-9,
    );
    // 2π (4/3)^{3/2}, mpmath
    let t_exact = 9.673_596_609_249_162;
    r.le(
        "7c'",
        "e=0.5 N=12 period vs 2 pi a^1.5 = 9.673596609249162",
        (t12 - t_exact).abs() / t_exact,
        1e-9,
    );
    r.le(
        "7c'",
        "oracle period agrees with the conic module",
        (period(&ellipse, &unit()).unwrap() - t_exact).abs() / t_exact,
        1e-15,
    );

    let alpha360 = fit_alpha_for_period(&circle, 360, &unit()).unwrap();
    r.le(
        "7d",
        "fit alpha, circle N=360, |alpha - 1|",
        (alpha360 - 1.0).abs(),
        1e-3,
    );

    let t1 = revolution_period(1.0, &ellipse, 12);
    let t2 = revolution_period(2.0, &ellipse, 12);
    r.le(
        "7e",
        "period scales as sqrt(alpha)",
        (t2 / t1 - 2.0f64.sqrt()).abs(),
        1e-12,
    );
}

fn criterion_8(r: &mut Report) {
    let circle = ConicElements::from_shape(1.0, 0.0, 0.0, &unit()).unwrap();
    let err = |n: usize| (revolution_period(1.0, &circle, n) - 2.0 * PI).abs();
    let order = (err(24) / err(48)).log2();
    r.check(
        "8",
        "continuum order, delta = pi/24 vs pi/48",
        order,
        (1.9..=2.1).contains(&order),
        "in [1.9, 2.1]",
    );
}

fn criterion_9(r: &mut Report) {
    let conic = ConicElements::from_shape(1.0, 0.6, 0.0, &unit()).unwrap();
    let report = compare(&conic, 24, 1000, 1.0, &unit()).unwrap();
    let exact = report.row(EXACT_SCHEME).unwrap();
    let floor = exact.final_drift_e.max(exact.max_drift_e);
    for method in [Method::Rk4, Method::ExplicitEuler] {
        let row = report.row(method.name()).unwrap();
        let ratio = row.final_drift_e / floor;
        r.check(
            "9",
            &format!("{} / exact energy drift over 1000 revolutions", method.name()),
            ratio,
            ratio >= 1e4,
            ">= 1e4",
        );
    }
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let argv: Vec<String> = std::iter::once("exact-kepler")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_cli(&argv, &mut out, &mut err);
    (code, out)
}

fn criterion_10(r: &mut Report) {
    let runs: [&[&str]; 3] = [
        &[
            "simulate",
            "--p",
            "1",
            "--e",
            "0.5",
            "--steps-per-rev",
            "12",
            "--n-steps",
            "48",
        ],
        &[
            "simulate",
            "--p",
            "1",
            "--e",
            "1.5",
            "--delta",
            "0.2617993877991494",
            "--n-steps",
            "50",
        ],
        &[
            "compare",
            "--p",
            "1",
            "--e",
            "0.6",
            "--steps-per-rev",
            "24",
            "--revolutions",
            "5",
        ],
    ];
    let mut identical = 0;
    for args in runs {
        let (a, b) = (cli(args), cli(args));
        identical += usize::from(a == b && !a.1.is_empty());
    }
    let bin = env!("CARGO_BIN_EXE_exact-kepler");
    let spawn = || std::process::Command::new(bin).args(runs[0]).output().unwrap().stdout;
    identical += usize::from(spawn() == spawn());
    r.check(
        "10",
        "byte-identical repeated runs (of 4)",
        identical as f64,
        identical == 4,
        "all identical",
    );

    let (_, out) = cli(runs[0]);
    let text = String::from_utf8(out).unwrap();
    let (mut fields, mut mismatched) = (0usize, 0usize);
    for line in text.lines().skip(1).filter(|l| !l.starts_with('#')) {
        for field in line.split(',').skip(1).filter(|f| !f.is_empty()) {
            let x: f64 = field.parse().unwrap();
            fields += 1;
            mismatched += usize::from(render(x) != field);
        }
    }
    r.check(
        "10",
        &format!("CSV fields round-trip through binary64 ({fields} fields)"),
        mismatched as f64,
        mismatched == 0 && fields > 0,
        "0 mismatches",
    );
}

fn main() -> ExitCode {
    let mut r = Report { lines: Vec::new() };
    let criteria: [fn(&mut Report); 8] = [
        criterion_1,
        criteria_2_3_5,
        criterion_4,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    for criterion in criteria {
        let start = Instant::now();
        criterion(&mut r);
        eprintln!("      ({:.2} s)", start.elapsed().as_secs_f64());
    }

    let failed: Vec<&str> = r
        .lines
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(id, _)| id.as_str())
        .collect();
    let unexpected: Vec<&str> = failed
        .iter()
        .copied()
        .filter(|id| !KNOWN_UNATTAINABLE.contains(id))
        .collect();
    println!(
        "acceptance: {} checks, {} failed ({} unattainable reference values, {} unexpected)",
        r.lines.len(),
        failed.len(),
        failed.len() - unexpected.len(),
        unexpected.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
